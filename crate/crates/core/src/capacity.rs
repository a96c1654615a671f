//! Seminorms induced by capacities on enumerable families of subobjects.
//!
//! A capacitated object is a finite family of subobject handles, partially
//! ordered, with an extended-real value per handle. A morphism acts on
//! families through its preimage map `C ↦ f*C` (target handle to source
//! handle). From these:
//!
//! * `‖f‖_c  = sup0 { c(f*C) - c(C) : c(C) < inf }`
//! * `‖f‖_-c = sup0 { c(C) - c(f*C) : c(C) < inf, f*C nonempty }`
//!
//! The nonempty-preimage filter of the co-seminorm can be switched off with
//! [`CoFilter::None`] to obtain the unfiltered quantity.

use serde::Serialize;

use crate::category::{dual_seminorm, is_modulator, CategoryError, FiniteCategory, NormAssignment, Side};
use crate::ext::{sup0, ConventionError, ExtReal, TOL};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CapacityError {
    #[error("order matrix has wrong shape")]
    Shape,
    #[error("order is not reflexive at {0}")]
    NotReflexive(String),
    #[error("order is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(String, String),
    #[error("order is not transitive at ({0}, {1}, {2})")]
    NotTransitive(String, String, String),
    #[error("capacity declared monotone but {lower} <= {upper} has value {lower_value} > {upper_value}")]
    NotMonotone {
        lower: String,
        upper: String,
        lower_value: ExtReal,
        upper_value: ExtReal,
    },
    #[error("capacity declared antimonotone but {lower} <= {upper} has value {lower_value} < {upper_value}")]
    NotAntimonotone {
        lower: String,
        upper: String,
        lower_value: ExtReal,
        upper_value: ExtReal,
    },
    #[error("preimage map has {got} entries, target family has {expected}")]
    PreimageLength { expected: usize, got: usize },
    #[error("preimage map points outside the source family")]
    PreimageRange,
    #[error("preimage of composite differs from composite of preimages at morphism {0}")]
    NotFunctorial(String),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// A finite poset of subobject handles of one carrier.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubobjectFamily {
    carrier: String,
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    empty: Vec<bool>,
}

impl SubobjectFamily {
    /// `empty[i]` marks handles representing the empty subobject.
    pub fn new(
        carrier: impl Into<String>,
        labels: Vec<String>,
        leq: Vec<Vec<bool>>,
        empty: Vec<bool>,
    ) -> Result<Self, CapacityError> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) || empty.len() != n {
            return Err(CapacityError::Shape);
        }
        let fam = SubobjectFamily {
            carrier: carrier.into(),
            labels,
            leq,
            empty,
        };
        fam.validate_order()?;
        Ok(fam)
    }

    /// Builds the order from a predicate; the result is still validated.
    pub fn from_order(
        carrier: impl Into<String>,
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
        empty: impl Fn(usize) -> bool,
    ) -> Result<Self, CapacityError> {
        let n = labels.len();
        let m = (0..n).map(|i| (0..n).map(|j| leq(i, j)).collect()).collect();
        let e = (0..n).map(empty).collect();
        Self::new(carrier, labels, m, e)
    }

    fn validate_order(&self) -> Result<(), CapacityError> {
        let n = self.labels.len();
        let l = |i: usize| self.labels[i].clone();
        for i in 0..n {
            if !self.leq[i][i] {
                return Err(CapacityError::NotReflexive(l(i)));
            }
            for j in 0..n {
                if i != j && self.leq[i][j] && self.leq[j][i] {
                    return Err(CapacityError::NotAntisymmetric(l(i), l(j)));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !self.leq[i][j] {
                    continue;
                }
                for k in 0..n {
                    if self.leq[j][k] && !self.leq[i][k] {
                        return Err(CapacityError::NotTransitive(l(i), l(j), l(k)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn carrier(&self) -> &str {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn is_empty_handle(&self, i: usize) -> bool {
        self.empty[i]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    Monotone,
    Antimonotone,
    Unchecked,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Capacity {
    values: Vec<ExtReal>,
    direction: Direction,
}

impl Capacity {
    /// Validates the declared direction over all comparable pairs.
    pub fn new(fam: &SubobjectFamily, values: Vec<ExtReal>, direction: Direction) -> Result<Self, CapacityError> {
        if values.len() != fam.len() {
            return Err(CapacityError::Shape);
        }
        let cap = Capacity { values, direction };
        match direction {
            Direction::Monotone => {
                if let Some((i, j)) = check_capacity_monotone(fam, &cap).witness {
                    return Err(CapacityError::NotMonotone {
                        lower: fam.labels[i].clone(),
                        upper: fam.labels[j].clone(),
                        lower_value: cap.values[i],
                        upper_value: cap.values[j],
                    });
                }
            }
            Direction::Antimonotone => {
                if let Some((i, j)) = check_capacity_monotone(fam, &cap).witness {
                    return Err(CapacityError::NotAntimonotone {
                        lower: fam.labels[i].clone(),
                        upper: fam.labels[j].clone(),
                        lower_value: cap.values[i],
                        upper_value: cap.values[j],
                    });
                }
            }
            Direction::Unchecked => {}
        }
        Ok(cap)
    }

    pub fn value(&self, handle: usize) -> ExtReal {
        self.values[handle]
    }

    pub fn values(&self) -> &[ExtReal] {
        &self.values
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneCheck {
    pub monotone: bool,
    /// `(lower, upper)` with `lower <= upper` whose values violate the
    /// declared direction.
    pub witness: Option<(usize, usize)>,
}

/// Checks every comparable pair against the capacity's direction, up to
/// `TOL`; `Unchecked` capacities are tested as monotone.
pub fn check_capacity_monotone(fam: &SubobjectFamily, c: &Capacity) -> MonotoneCheck {
    let anti = c.direction == Direction::Antimonotone;
    for i in 0..fam.len() {
        for j in 0..fam.len() {
            let bad = if anti {
                !c.values[j].le_tol(c.values[i], TOL)
            } else {
                !c.values[i].le_tol(c.values[j], TOL)
            };
            if fam.leq(i, j) && bad {
                return MonotoneCheck {
                    monotone: false,
                    witness: Some((i, j)),
                };
            }
        }
    }
    MonotoneCheck {
        monotone: true,
        witness: None,
    }
}

/// A family together with a capacity on it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CapacitatedObject {
    pub family: SubobjectFamily,
    pub capacity: Capacity,
}

/// Preimage action of one morphism: target handle ↦ source handle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Preimage(pub Vec<usize>);

impl Preimage {
    pub fn validate(&self, src: &SubobjectFamily, tgt: &SubobjectFamily) -> Result<(), CapacityError> {
        if self.0.len() != tgt.len() {
            return Err(CapacityError::PreimageLength {
                expected: tgt.len(),
                got: self.0.len(),
            });
        }
        if self.0.iter().any(|&h| h >= src.len()) {
            return Err(CapacityError::PreimageRange);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoFilter {
    /// Skip subobjects whose preimage is empty.
    NonemptyPreimage,
    /// Only the `c(C) < inf` filter.
    None,
}

/// `sup0 { c(f*C) - c(C) : C in target family, c(C) < inf }`.
pub fn capacity_seminorm(
    pre: &Preimage,
    src: &CapacitatedObject,
    tgt: &CapacitatedObject,
) -> Result<ExtReal, ConventionError> {
    let mut terms = Vec::new();
    for (c, &pc) in pre.0.iter().enumerate() {
        let cv = tgt.capacity.value(c);
        if cv.is_pos_inf() {
            continue;
        }
        terms.push(src.capacity.value(pc).checked_sub(cv)?);
    }
    Ok(sup0(terms))
}

/// `sup0 { c(C) - c(f*C) : c(C) < inf }`, with the optional nonempty-preimage
/// filter.
pub fn capacity_coseminorm(
    pre: &Preimage,
    src: &CapacitatedObject,
    tgt: &CapacitatedObject,
    filter: CoFilter,
) -> Result<ExtReal, ConventionError> {
    let mut terms = Vec::new();
    for (c, &pc) in pre.0.iter().enumerate() {
        let cv = tgt.capacity.value(c);
        if cv.is_pos_inf() {
            continue;
        }
        if filter == CoFilter::NonemptyPreimage && src.family.is_empty_handle(pc) {
            continue;
        }
        terms.push(cv.checked_sub(src.capacity.value(pc))?);
    }
    Ok(sup0(terms))
}

/// A finite category with a capacitated object per object and a preimage
/// map per morphism.
#[derive(Debug, Clone)]
pub struct CapacitatedCategory {
    pub category: FiniteCategory,
    pub objects: Vec<CapacitatedObject>,
    pub preimages: Vec<Preimage>,
}

impl CapacitatedCategory {
    /// Checks shapes and functoriality `(g∘f)* = f* ∘ g*`.
    pub fn new(
        category: FiniteCategory,
        objects: Vec<CapacitatedObject>,
        preimages: Vec<Preimage>,
    ) -> Result<Self, CapacityError> {
        assert_eq!(objects.len(), category.objects().len());
        assert_eq!(preimages.len(), category.morphisms().len());
        for (m, pre) in category.morphisms().iter().zip(&preimages) {
            pre.validate(&objects[m.src].family, &objects[m.tgt].family)?;
        }
        for (g, f, gf) in category.composition_entries() {
            let composed: Vec<usize> = preimages[g].0.iter().map(|&h| preimages[f].0[h]).collect();
            if composed != preimages[gf].0 {
                return Err(CapacityError::NotFunctorial(category.morphism(gf).id.clone()));
            }
        }
        Ok(CapacitatedCategory {
            category,
            objects,
            preimages,
        })
    }

    pub fn seminorm(&self, m: usize) -> Result<ExtReal, ConventionError> {
        let mm = self.category.morphism(m);
        capacity_seminorm(&self.preimages[m], &self.objects[mm.src], &self.objects[mm.tgt])
    }

    pub fn coseminorm(&self, m: usize, filter: CoFilter) -> Result<ExtReal, ConventionError> {
        let mm = self.category.morphism(m);
        capacity_coseminorm(&self.preimages[m], &self.objects[mm.src], &self.objects[mm.tgt], filter)
    }

    /// `‖·‖_c` lifted to a norm assignment on the whole category.
    pub fn seminorm_assignment(&self) -> Result<NormAssignment, DualReportError> {
        let values = (0..self.category.morphisms().len())
            .map(|m| self.seminorm(m))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(NormAssignment::new(&self.category, values)?)
    }

    pub fn coseminorm_assignment(&self, filter: CoFilter) -> Result<NormAssignment, DualReportError> {
        let values = (0..self.category.morphisms().len())
            .map(|m| self.coseminorm(m, filter))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(NormAssignment::new(&self.category, values)?)
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum DualReportError {
    #[error(transparent)]
    Convention(#[from] ConventionError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualRow {
    pub morphism: String,
    pub norm: ExtReal,
    /// Co-seminorm with the nonempty-preimage filter.
    pub co_norm: ExtReal,
    /// Co-seminorm without the filter.
    pub co_norm_unfiltered: ExtReal,
    pub left_dual: ExtReal,
    pub right_dual: ExtReal,
    pub left_bidual: ExtReal,
    pub right_bidual: ExtReal,
    pub right_dual_le_co: bool,
    pub right_dual_le_co_unfiltered: bool,
    pub biduals_le_norm: bool,
    /// Present when annihilators were requested: whether some `f'` with
    /// `‖f ∘ f'‖ = 0` exists in the category.
    pub has_left_annihilator: Option<bool>,
    /// Present when annihilators were requested: `‖f‖_c^{*L} >= ‖f‖_-c`.
    pub left_dual_ge_co: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualInequalityReport {
    pub rows: Vec<DualRow>,
    pub annihilators_checked: bool,
}

impl DualInequalityReport {
    /// Upper bounds `‖f‖^{*R} <= ‖f‖_-c` and biduals `<= ‖f‖` on every row.
    pub fn upper_bounds_hold(&self) -> bool {
        self.rows.iter().all(|r| r.right_dual_le_co && r.biduals_le_norm)
    }

    /// The annihilator lower bound on every row (vacuously true if not requested).
    pub fn lower_bounds_hold(&self) -> bool {
        self.rows.iter().all(|r| r.left_dual_ge_co.unwrap_or(true))
    }

    pub fn failures(&self) -> Vec<&DualRow> {
        self.rows
            .iter()
            .filter(|r| !r.right_dual_le_co || !r.biduals_le_norm || r.left_dual_ge_co == Some(false))
            .collect()
    }
}

/// Computes the capacity seminorm, its co-seminorm and the enumerated duals
/// and biduals of every morphism, and checks the dual inequalities. With
/// `annihilators`, additionally checks the left-dual lower bound.
pub fn dual_inequality_report(
    cc: &CapacitatedCategory,
    annihilators: bool,
) -> Result<DualInequalityReport, DualReportError> {
    let cat = &cc.category;
    let norm = cc.seminorm_assignment()?;
    let co = cc.coseminorm_assignment(CoFilter::NonemptyPreimage)?;
    let co_raw = cc.coseminorm_assignment(CoFilter::None)?;
    let left = dual_seminorm(cat, &norm, Side::Left)?;
    let right = dual_seminorm(cat, &norm, Side::Right)?;
    let left2 = dual_seminorm(cat, &left, Side::Left)?;
    let right2 = dual_seminorm(cat, &right, Side::Right)?;
    let rows = (0..cat.morphisms().len())
        .map(|m| {
            let annihilator = annihilators.then(|| {
                cat.into_object(cat.morphism(m).src)
                    .iter()
                    .any(|&fp| is_modulator(&norm, cat.compose(m, fp).expect("composable")))
            });
            DualRow {
                morphism: cat.morphism(m).id.clone(),
                norm: norm.get(m),
                co_norm: co.get(m),
                co_norm_unfiltered: co_raw.get(m),
                left_dual: left.get(m),
                right_dual: right.get(m),
                left_bidual: left2.get(m),
                right_bidual: right2.get(m),
                right_dual_le_co: right.get(m).le_tol(co.get(m), TOL),
                right_dual_le_co_unfiltered: right.get(m).le_tol(co_raw.get(m), TOL),
                biduals_le_norm: left2.get(m).le_tol(norm.get(m), TOL) && right2.get(m).le_tol(norm.get(m), TOL),
                has_left_annihilator: annihilator,
                left_dual_ge_co: annihilators.then(|| co.get(m).le_tol(left.get(m), TOL)),
            }
        })
        .collect();
    Ok(DualInequalityReport {
        rows,
        annihilators_checked: annihilators,
    })
}

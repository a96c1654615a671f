//! Packings: subsets whose distinct points are more than `l` apart.
//!
//! Total distances sum over ordered pairs, so each unordered pair counts twice.

use serde::Serialize;

use super::{FiniteMetricSpace, MetricError};

/// Largest space handled by the exhaustive packing search.
pub const PACKING_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PackingStats {
    /// Maximal size of an `l`-packing.
    pub pack_number: usize,
    /// One packing of that size.
    pub packing: Vec<usize>,
    /// Maximal ordered-pair total distance over all `l`-packings.
    pub tot_sup: f64,
}

/// Exhaustive search over all `l`-packings.
pub fn packing_stats(sp: &FiniteMetricSpace, l: f64) -> Result<PackingStats, MetricError> {
    assert!(l > 0.0, "packing radius must be positive");
    if sp.len() > PACKING_LIMIT {
        return Err(MetricError::TooLarge(sp.len(), PACKING_LIMIT));
    }
    let mut st = PackingStats {
        pack_number: 0,
        packing: Vec::new(),
        tot_sup: 0.0,
    };
    let mut cur = Vec::new();
    rec(sp, l, 0, &mut cur, 0.0, &mut st);
    Ok(st)
}

fn rec(sp: &FiniteMetricSpace, l: f64, next: usize, cur: &mut Vec<usize>, total: f64, st: &mut PackingStats) {
    if cur.len() > st.pack_number {
        st.pack_number = cur.len();
        st.packing = cur.clone();
    }
    st.tot_sup = st.tot_sup.max(total);
    for p in next..sp.len() {
        if cur.iter().all(|&q| sp.d(p, q) > l && sp.d(q, p) > l) {
            let added: f64 = cur.iter().map(|&q| sp.d(p, q) + sp.d(q, p)).sum();
            cur.push(p);
            rec(sp, l, p + 1, cur, total + added, st);
            cur.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_packings() {
        let sp = FiniteMetricSpace::from_line(&[0.0, 1.0, 2.0]);
        assert_eq!(packing_stats(&sp, 0.5).unwrap().pack_number, 3);
        let s = packing_stats(&sp, 1.5).unwrap();
        assert_eq!((s.pack_number, s.tot_sup), (2, 4.0));
        assert_eq!(s.packing, vec![0, 2]);
        let one = packing_stats(&FiniteMetricSpace::point(), 1.0).unwrap();
        assert_eq!((one.pack_number, one.tot_sup), (1, 0.0));
    }
}

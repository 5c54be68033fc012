use crate::error::{Error, Result};
use crate::graph::Graph;

pub const TUTTE_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TutteReport {
    pub holds: bool,
    pub violator: Option<Vec<usize>>,
    pub neighborhood: Option<Vec<usize>>,
}

/// Exhaustive check of `|N(S)| ≥ |S|` over independent sets `S`.
/// The reported violator maximizes `|S| − |N(S)|`, ties going to the smallest mask.
pub fn tutte_check(g: &Graph) -> Result<TutteReport> {
    let n = g.n();
    if n > TUTTE_LIMIT {
        return Err(Error::guard(format!("tutte check limited to {TUTTE_LIMIT} vertices, got {n}")));
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let mut worst: Option<(u32, u32, u32)> = None;
    for mask in 1u32..(1u32 << n) {
        let mut union = 0u32;
        let mut independent = true;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if nbr[v] & mask != 0 {
                independent = false;
                break;
            }
            union |= nbr[v];
        }
        if independent && union.count_ones() < mask.count_ones() {
            let gap = mask.count_ones() - union.count_ones();
            if worst.is_none_or(|(g, _, _)| gap > g) {
                worst = Some((gap, mask, union));
            }
        }
    }
    let bits = |m: u32| (0..n).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>();
    Ok(match worst {
        None => TutteReport { holds: true, violator: None, neighborhood: None },
        Some((_, mask, union)) => TutteReport {
            holds: false,
            violator: Some(bits(mask)),
            neighborhood: Some(bits(union)),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(tutte_check(&Graph::cycle(5)).unwrap().holds);
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = tutte_check(&star).unwrap();
        assert!(!r.holds);
        assert_eq!(r.violator, Some(vec![1, 2, 3]));
        assert_eq!(r.neighborhood, Some(vec![0]));
        let pm = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        assert!(tutte_check(&pm).unwrap().holds);
    }

    #[test]
    fn isolated_vertex_violates() {
        let r = tutte_check(&Graph::empty(1)).unwrap();
        assert_eq!(r.violator, Some(vec![0]));
        assert!(tutte_check(&Graph::empty(0)).unwrap().holds);
    }

    #[test]
    fn guard() {
        assert!(tutte_check(&Graph::empty(21)).is_err());
    }
}

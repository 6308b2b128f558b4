use crate::dnf::Dnf;
use crate::error::{Error, Result};

/// Conflict graph on terms: `i -> j` iff some negative variable of `i` is positive in `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateGraph {
    out: Vec<Vec<usize>>,
    undirected: Vec<Vec<usize>>,
}

impl GateGraph {
    pub fn new(d: &Dnf) -> Self {
        let terms = d.terms();
        let k = terms.len();
        let mut out = vec![Vec::new(); k];
        let mut undirected = vec![Vec::new(); k];
        for i in 0..k {
            for j in 0..k {
                if i != j && terms[i].neg() & terms[j].pos() != 0 {
                    out[i].push(j);
                }
            }
        }
        for i in 0..k {
            for &j in &out[i] {
                undirected[i].push(j);
                undirected[j].push(i);
            }
        }
        for adj in &mut undirected {
            adj.sort_unstable();
            adj.dedup();
        }
        GateGraph { out, undirected }
    }

    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out.is_empty()
    }

    pub fn out_neighbors(&self, i: usize) -> &[usize] {
        &self.out[i]
    }

    /// Neighbours in the undirected shadow.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.undirected[i]
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateMode {
    Block,
    TBlock(usize),
}

pub(crate) fn check_mode(d: &Dnf, mode: GateMode) -> Result<()> {
    let t = match mode {
        GateMode::Block => 1,
        GateMode::TBlock(0) => {
            return Err(Error::OutOfRange("t-block mode needs t >= 1".into()));
        }
        GateMode::TBlock(t) => t,
    };
    let terms = d.terms();
    for p in 0..d.arity() {
        let holders: Vec<usize> = (0..terms.len())
            .filter(|&i| terms[i].pos() >> p & 1 == 1)
            .collect();
        if holders.len() > t {
            let list: Vec<String> = holders.iter().map(|i| (i + 1).to_string()).collect();
            return Err(Error::PropertyViolation(format!(
                "x{} is positive in terms {} (more than {t})",
                p + 1,
                list.join(", ")
            )));
        }
    }
    Ok(())
}

/// `f(0^n) = 0` read off the formula: every term needs a positive literal.
pub(crate) fn check_zero_at_origin(d: &Dnf) -> Result<()> {
    match d.terms().iter().position(|t| t.pos() == 0) {
        Some(i) => Err(Error::CompactForm(format!(
            "term {} has no positive literal, so f(0^n) = 1",
            i + 1
        ))),
        None => Ok(()),
    }
}

/// Greedy min-degree selection of pairwise non-conflicting terms, ascending.
///
/// Each round keeps a remaining term of least degree in the undirected conflict
/// graph (lowest index on ties) and discards its neighbours; in t-block mode it
/// also discards every term sharing a positive variable with it.
pub fn greedy_independent_gates(d: &Dnf, mode: GateMode) -> Result<Vec<usize>> {
    check_mode(d, mode)?;
    let g = GateGraph::new(d);
    let terms = d.terms();
    let mut alive = vec![true; g.len()];
    let mut chosen = Vec::new();
    loop {
        let pick = (0..g.len()).filter(|&i| alive[i]).min_by_key(|&i| {
            let deg = g.neighbors(i).iter().filter(|&&j| alive[j]).count();
            (deg, i)
        });
        let Some(i) = pick else { break };
        chosen.push(i);
        alive[i] = false;
        for &j in g.neighbors(i) {
            alive[j] = false;
        }
        if let GateMode::TBlock(_) = mode {
            for (j, t) in terms.iter().enumerate() {
                if t.pos() & terms[i].pos() != 0 {
                    alive[j] = false;
                }
            }
        }
    }
    chosen.sort_unstable();
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dnf::fixtures::*;

    #[test]
    fn or3_has_no_edges() {
        let g = GateGraph::new(&or3());
        assert_eq!(g.edge_count(), 0);
        assert_eq!(greedy_independent_gates(&or3(), GateMode::Block).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn edges_follow_negative_literals() {
        let d = dnf(5, &[(&[2], &[]), (&[4], &[]), (&[1, 3, 5], &[2, 4])]);
        let g = GateGraph::new(&d);
        assert_eq!(g.out_neighbors(2), &[0, 1]);
        assert!(g.out_neighbors(0).is_empty());
        assert_eq!(g.neighbors(0), &[2]);
        let e = greedy_independent_gates(&d, GateMode::Block).unwrap();
        assert_eq!(e, vec![0, 1]);
    }

    #[test]
    fn ambainis_sun_graph_is_complete() {
        let d = ambainis_sun1();
        let g = GateGraph::new(&d);
        for i in 0..3 {
            assert_eq!(g.neighbors(i).len(), 2);
            assert!(g.out_neighbors(i).len() <= d.terms()[i].neg().count_ones() as usize);
        }
        assert_eq!(greedy_independent_gates(&d, GateMode::Block).unwrap(), vec![0]);
    }

    #[test]
    fn property_violations_are_named() {
        let d = dnf(3, &[(&[1, 2], &[]), (&[2, 3], &[])]);
        let err = greedy_independent_gates(&d, GateMode::Block).unwrap_err();
        assert_eq!(
            err,
            Error::PropertyViolation("x2 is positive in terms 1, 2 (more than 1)".into())
        );
        let e = greedy_independent_gates(&d, GateMode::TBlock(2)).unwrap();
        assert_eq!(e, vec![0]);
    }
}

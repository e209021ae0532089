//! Monomial orders over an explicit list of variables.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InnerOrder {
    Lex,
    #[default]
    GrevLex,
}

/// Variables of one block, most significant first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Block {
    pub vars: Vec<usize>,
    pub inner: InnerOrder,
}

impl Block {
    pub fn new(vars: Vec<usize>, inner: InnerOrder) -> Self {
        Block { vars, inner }
    }

    fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.inner {
            InnerOrder::Lex => {
                for &v in &self.vars {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            InnerOrder::GrevLex => {
                let da = a.degree_in(&self.vars);
                let db = b.degree_in(&self.vars);
                if da != db {
                    return da.cmp(&db);
                }
                for &v in self.vars.iter().rev() {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// A monomial order: a sequence of blocks compared in turn, each with its own inner
/// order. A single block gives plain lex or grevlex; several give a block
/// (elimination) order in which every variable of an earlier block dominates all
/// variables of later blocks.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialOrder {
    blocks: Vec<Block>,
}

impl MonomialOrder {
    pub fn lex(vars: Vec<usize>) -> Self {
        MonomialOrder {
            blocks: vec![Block::new(vars, InnerOrder::Lex)],
        }
    }

    pub fn grevlex(vars: Vec<usize>) -> Self {
        MonomialOrder {
            blocks: vec![Block::new(vars, InnerOrder::GrevLex)],
        }
    }

    /// Block order; empty blocks are dropped.
    pub fn block(blocks: Vec<Block>) -> Self {
        MonomialOrder {
            blocks: blocks.into_iter().filter(|b| !b.vars.is_empty()).collect(),
        }
    }

    /// Elimination order with `eliminate` greater than `keep`, grevlex inside each block.
    pub fn elimination(eliminate: Vec<usize>, keep: Vec<usize>) -> Self {
        MonomialOrder::block(vec![
            Block::new(eliminate, InnerOrder::GrevLex),
            Block::new(keep, InnerOrder::GrevLex),
        ])
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// All variables of the order, most significant first.
    pub fn variables(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .flat_map(|b| b.vars.iter().copied())
            .collect()
    }

    pub fn num_vars(&self) -> usize {
        self.blocks.iter().map(|b| b.vars.len()).sum()
    }

    pub fn covers(&self, m: &Monomial) -> bool {
        m.support()
            .all(|v| self.blocks.iter().any(|b| b.vars.contains(&v)))
    }

    /// True when total degree is compared first (a single grevlex block).
    pub fn is_degree_compatible(&self) -> bool {
        self.blocks.len() <= 1
            && self
                .blocks
                .first()
                .map_or(true, |b| b.inner == InnerOrder::GrevLex)
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for block in &self.blocks {
            match block.compare(a, b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    pub fn name(&self) -> String {
        match self.blocks.as_slice() {
            [] => "grevlex".to_string(),
            [b] => match b.inner {
                InnerOrder::Lex => "lex".to_string(),
                InnerOrder::GrevLex => "grevlex".to_string(),
            },
            bs => format!("block({})", bs.len()),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_dense(e.to_vec())
    }

    #[test]
    fn grevlex_ties_break_on_last_variable() {
        let ord = MonomialOrder::grevlex(vec![0, 1]);
        // x^2 y vs x y^2
        assert_eq!(ord.compare(&m(&[2, 1]), &m(&[1, 2])), Ordering::Greater);
        let ord3 = MonomialOrder::grevlex(vec![0, 1, 2]);
        // x z^2 < y^3 in grevlex
        assert_eq!(ord3.compare(&m(&[1, 0, 2]), &m(&[0, 3, 0])), Ordering::Less);
    }

    #[test]
    fn lex_first_variable_dominates() {
        let ord = MonomialOrder::lex(vec![0, 1]);
        assert_eq!(ord.compare(&m(&[1]), &m(&[0, 5])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates() {
        let ord = MonomialOrder::elimination(vec![1], vec![0]);
        // y beats any power of x
        assert_eq!(ord.compare(&m(&[0, 1]), &m(&[9])), Ordering::Greater);
        assert!(!ord.is_degree_compatible());
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::lex(vec![0, 1, 2, 3]),
            MonomialOrder::grevlex(vec![0, 1, 2, 3]),
            MonomialOrder::grevlex(vec![3, 1, 0, 2]),
            MonomialOrder::elimination(vec![2, 0], vec![1, 3]),
            MonomialOrder::block(vec![
                Block::new(vec![1], InnerOrder::Lex),
                Block::new(vec![0, 2, 3], InnerOrder::GrevLex),
            ]),
        ]
    }

    proptest! {
        #[test]
        fn order_laws(a in prop::collection::vec(0u32..4, 4),
                      b in prop::collection::vec(0u32..4, 4),
                      c in prop::collection::vec(0u32..4, 4)) {
            let (a, b, c) = (m(&a), m(&b), m(&c));
            for ord in orders() {
                let ab = ord.compare(&a, &b);
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                prop_assert_eq!(ab, ord.compare(&b, &a).reverse());
                if ab == Ordering::Less {
                    prop_assert_eq!(ord.compare(&a.mul(&c), &b.mul(&c)), Ordering::Less);
                }
                prop_assert_ne!(ord.compare(&Monomial::one(), &a), Ordering::Greater);
            }
        }
    }
}

//! Monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::monomial::{Monomial, MAX_VARS};

/// A monomial order. Variables are indexed left to right, `x_0 > x_1 > ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    #[default]
    DegRevLex,
    Lex,
    /// Product order eliminating the first `k` variables: degrevlex on the
    /// first block, ties broken by degrevlex on the rest.
    Elimination(usize),
}

fn grevlex_range(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    let (ea, eb) = (a.exps(), b.exps());
    let da: u32 = ea[lo..hi].iter().map(|&e| e as u32).sum();
    let db: u32 = eb[lo..hi].iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (lo..hi).rev() {
        if ea[i] != eb[i] {
            return eb[i].cmp(&ea[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                let (ea, eb) = (a.exps(), b.exps());
                for i in (0..MAX_VARS).rev() {
                    if ea[i] != eb[i] {
                        return eb[i].cmp(&ea[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => a.exps().cmp(b.exps()),
            MonomialOrder::Elimination(k) => match grevlex_range(a, b, 0, k) {
                Ordering::Equal => grevlex_range(a, b, k, MAX_VARS),
                o => o,
            },
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::DegRevLex => "degrevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Elimination(k) => format!("elim({k})"),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

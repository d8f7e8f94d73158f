//! The two design rules for exceeding the `(n_c+1)!` distance bound.
//!
//! Rule 1: every pre-lift permutation commutes with every other, and the
//! shifts make some pair of block permutations strongly noncommutative.
//! Rule 2: some pair of pre-lift permutations is already strongly
//! noncommutative, and every block permutation has a uniform shift.
//! Both are applied to every `n_c × (n_c+1)` block submatrix after
//! bringing it to canonical form.

use std::fmt;

use crate::error::{Error, Result};
use crate::lift::QcLiftSpec;
use crate::distance::bound::next_combination;
use crate::perm::CirculantBlockPerm;

/// Outcome over all submatrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DesignRule {
    Rule1,
    Rule2,
    /// Every submatrix satisfies a rule, but not the same one.
    Both,
    Neither,
}

impl fmt::Display for DesignRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DesignRule::Rule1 => "DR1-satisfied",
            DesignRule::Rule2 => "DR2-satisfied",
            DesignRule::Both => "both",
            DesignRule::Neither => "neither",
        })
    }
}

/// Verdict for one block submatrix.
#[derive(Clone, Debug)]
pub struct SubmatrixRule {
    /// Block columns of the submatrix, 0-based.
    pub columns: Vec<usize>,
    pub rule: Option<DesignRule>,
    /// A strongly noncommutative pair, as 0-based cell positions within
    /// the submatrix.
    pub witness: Option<((usize, usize), (usize, usize))>,
    pub pis_commute: bool,
    pub uniform_shifts: bool,
}

#[derive(Clone, Debug)]
pub struct DesignRuleReport {
    pub verdict: DesignRule,
    pub submatrices: Vec<SubmatrixRule>,
}

fn check_submatrix(spec: &QcLiftSpec, columns: Vec<usize>) -> Result<SubmatrixRule> {
    let sub = spec.select_columns(&columns)?.canonicalize()?;
    let b = sub.base();
    let cells: Vec<((usize, usize), &CirculantBlockPerm)> = (0..b.n_c())
        .flat_map(|i| (0..b.n_v()).map(move |j| (i, j)))
        .filter_map(|(i, j)| sub.single(i, j).map(|t| ((i, j), t)))
        .collect();
    let mut pis_commute = true;
    let mut pi_snc = None;
    let mut cb_snc = None;
    for (a, (pa, ta)) in cells.iter().enumerate() {
        for (pb, tb) in &cells[a + 1..] {
            if !ta.pi().commutes_with(tb.pi())? {
                pis_commute = false;
            }
            if pi_snc.is_none() && ta.pi().strongly_noncommutative(tb.pi())? {
                pi_snc = Some((*pa, *pb));
            }
            if cb_snc.is_none() && ta.strongly_noncommutative(tb)? {
                cb_snc = Some((*pa, *pb));
            }
        }
    }
    let uniform_shifts = cells.iter().all(|(_, t)| t.has_uniform_shifts());
    let (rule, witness) = if pis_commute && cb_snc.is_some() {
        (Some(DesignRule::Rule1), cb_snc)
    } else if uniform_shifts && pi_snc.is_some() {
        (Some(DesignRule::Rule2), pi_snc)
    } else {
        (None, None)
    };
    Ok(SubmatrixRule {
        columns,
        rule,
        witness,
        pis_commute,
        uniform_shifts,
    })
}

/// Checks both design rules on every `n_c × (n_c+1)` block submatrix.
pub fn check_design_rule(spec: &QcLiftSpec) -> Result<DesignRuleReport> {
    let b = spec.base();
    if !b.is_single_edge() {
        return Err(Error::Unsupported("design rules are checked on single-edge bases".into()));
    }
    let k = b.n_c() + 1;
    if b.n_v() < k {
        return Err(Error::InvalidBase(format!(
            "need at least {k} block columns, have {}",
            b.n_v()
        )));
    }
    let mut cols: Vec<usize> = (0..k).collect();
    let mut submatrices = Vec::new();
    loop {
        submatrices.push(check_submatrix(spec, cols.clone())?);
        if !next_combination(&mut cols, b.n_v()) {
            break;
        }
    }
    let rules: Vec<Option<DesignRule>> = submatrices.iter().map(|s| s.rule).collect();
    let verdict = if rules.iter().all(|r| *r == Some(DesignRule::Rule1)) {
        DesignRule::Rule1
    } else if rules.iter().all(|r| *r == Some(DesignRule::Rule2)) {
        DesignRule::Rule2
    } else if rules.iter().all(Option::is_some) {
        DesignRule::Both
    } else {
        DesignRule::Neither
    };
    Ok(DesignRuleReport { verdict, submatrices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn published_verdicts() {
        let c1 = corpus::build("c1").unwrap();
        assert_eq!(check_design_rule(&c1).unwrap().verdict, DesignRule::Rule1);
        let ex8 = corpus::build("ex8-r14").unwrap();
        assert_eq!(check_design_rule(&ex8).unwrap().verdict, DesignRule::Rule2);
        let uni = corpus::build("uniform-r49").unwrap();
        assert_eq!(check_design_rule(&uni).unwrap().verdict, DesignRule::Neither);
        let tanner = corpus::build("tanner31").unwrap();
        assert_eq!(check_design_rule(&tanner).unwrap().verdict, DesignRule::Neither);
    }

    #[test]
    fn every_submatrix_is_checked() {
        let c7 = corpus::build("c7-3-5-4-28").unwrap();
        let rep = check_design_rule(&c7).unwrap();
        assert_eq!(rep.submatrices.len(), 5);
    }
}

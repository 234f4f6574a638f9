use crate::matroid::Independence;
use crate::set::{Element, ElementSet};
use crate::valuation::SetFunction;

/// How the greedy step orders elements with equal marginal value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    #[default]
    LowestIndex,
    HighestIndex,
}

/// The feasible element of `pool` with the largest marginal over `current`.
///
/// Ties go to the index preferred by `tie`. Zero-marginal elements are still
/// returned as long as they are feasible.
pub fn best_extension<I, F>(
    system: &I,
    f: &F,
    current: &ElementSet,
    pool: &ElementSet,
    tie: TieBreak,
) -> Option<(Element, f64)>
where
    I: Independence + ?Sized,
    F: SetFunction + ?Sized,
{
    let mut order: Vec<Element> = pool.iter().filter(|&e| !current.contains(e)).collect();
    if tie == TieBreak::HighestIndex {
        order.reverse();
    }
    let base = f.value(current);
    let mut best: Option<(Element, f64)> = None;
    for e in order {
        if !system.can_extend(current, e) {
            continue;
        }
        let gain = f.value(&current.with(e)) - base;
        if best.is_none_or(|(_, g)| gain > g) {
            best = Some((e, gain));
        }
    }
    best
}

/// Greedy over `candidates`: repeatedly add the feasible element with the
/// largest marginal, lowest index first on ties, until none is feasible.
pub fn greedy<I, F>(system: &I, f: &F, candidates: &ElementSet) -> ElementSet
where
    I: Independence + ?Sized,
    F: SetFunction + ?Sized,
{
    greedy_with_tie_break(system, f, candidates, TieBreak::LowestIndex)
}

pub fn greedy_with_tie_break<I, F>(
    system: &I,
    f: &F,
    candidates: &ElementSet,
    tie: TieBreak,
) -> ElementSet
where
    I: Independence + ?Sized,
    F: SetFunction + ?Sized,
{
    let mut chosen = ElementSet::empty(candidates.universe());
    while let Some((e, _)) = best_extension(system, f, &chosen, candidates, tie) {
        chosen.insert(e);
    }
    chosen
}

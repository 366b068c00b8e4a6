//! Pairwise irreducibility of element sets.

use crate::contract::Simplifier;

/// True iff `x` neither rewrites nor is rewritten by any single member of `s`.
pub fn mutually_irreducible<S: Simplifier>(sim: &S, x: &S::Element, s: &[S::Element]) -> bool {
    let xs = std::slice::from_ref(x);
    s.iter()
        .all(|d| !sim.rewritable(x, std::slice::from_ref(d)) && !sim.rewritable(d, xs))
}

/// True iff every element is mutually irreducible with every later one.
pub fn irreducible_list<S: Simplifier>(sim: &S, s: &[S::Element]) -> bool {
    first_reducible_pair(sim, s).is_none()
}

/// Indices `(i, j)`, `i < j`, of the first pair that interacts.
pub fn first_reducible_pair<S: Simplifier>(sim: &S, s: &[S::Element]) -> Option<(usize, usize)> {
    (0..s.len()).find_map(|i| {
        (i + 1..s.len())
            .find(|&j| !mutually_irreducible(sim, &s[i], std::slice::from_ref(&s[j])))
            .map(|j| (i, j))
    })
}

//! Strong and lexicographic products.

use super::DecisionReport;
use crate::digraph::Digraph;
use crate::error::Result;
use crate::products::{product, PairIndex, ProductKind};
use crate::solver::find_ecd_set;

/// `D ⊠ F` is ECD exactly when both factors are, with `S_D × S_F` as an
/// ECD set.
pub fn decide_strong(d: &Digraph, f: &Digraph) -> Result<DecisionReport> {
    let p = product(ProductKind::Strong, d, f);
    let desc = format!("strong(D[{}], F[{}])", d.order(), f.order());
    let Some(sd) = find_ecd_set(d) else {
        return Ok(DecisionReport::negative(desc, &p, "factor D not ECD"));
    };
    let Some(sf) = find_ecd_set(f) else {
        return Ok(DecisionReport::negative(desc, &p, "factor F not ECD"));
    };
    let idx = PairIndex::of(d, f);
    let set = sd
        .set
        .iter()
        .flat_map(|&x| sf.set.iter().map(move |&y| idx.flat(x, y)))
        .collect();
    DecisionReport::positive(desc, &p, set, Vec::new())
}

/// `D ∘ F` is ECD exactly when `D` is arcless and `F` is ECD (copies of
/// `F`), or `D` is ECD and `F` has an out-universal vertex `f0`, giving
/// `S_D × {f0}`. A loop in `D` turns its layer into a complete digraph,
/// which the characterization does not account for; such inputs are
/// settled by search.
pub fn decide_lex(d: &Digraph, f: &Digraph) -> Result<DecisionReport> {
    let p = product(ProductKind::Lexicographic, d, f);
    let desc = format!("lexicographic(D[{}], F[{}])", d.order(), f.order());
    if d.has_loops() {
        return Ok(DecisionReport::brute_force(desc, &p));
    }
    let idx = PairIndex::of(d, f);
    if d.is_arcless() {
        return Ok(match find_ecd_set(f) {
            Some(sf) => {
                let set = (0..d.order())
                    .flat_map(|x| sf.set.iter().map(move |&y| idx.flat(x, y)))
                    .collect();
                DecisionReport::positive(desc, &p, set, Vec::new())?
            }
            None => DecisionReport::negative(desc, &p, "D arcless but F not ECD"),
        });
    }
    let Some(f0) = f.out_universal_vertex() else {
        return Ok(DecisionReport::negative(
            desc,
            &p,
            "D has arcs and F has no out-universal vertex",
        ));
    };
    match find_ecd_set(d) {
        Some(sd) => {
            let set = sd.set.iter().map(|&x| idx.flat(x, f0)).collect();
            DecisionReport::positive(desc, &p, set, Vec::new())
        }
        None => Ok(DecisionReport::negative(desc, &p, "factor D not ECD")),
    }
}

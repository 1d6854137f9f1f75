//! Connecting any two branchings of the same triangulation through the
//! completed calculus: refine both, invert the good ambiguous persistent
//! edges where the branchings disagree, then retrace the second refinement
//! backwards.

use crate::connect::inversion::expand_inversion_tracked;
use crate::connect::refine::refine_two_step;
use crate::connect::sequence::{
    decorated_signature, find_decorated_iso, replay_trace, reverse_transported, MoveSequence,
    MoveStep,
};
use crate::decor::branching::Branching;
use crate::moves::Decoration;
use crate::tri::Triangulation;

pub fn connect_completed(t: &Triangulation, b: &Branching, b2: &Branching) -> MoveSequence {
    let start = decorated_signature(t, &Decoration::Branching(b.clone())).to_string();
    let end = decorated_signature(t, &Decoration::Branching(b2.clone())).to_string();
    if b.signs == b2.signs {
        return MoveSequence { steps: Vec::new(), start, end };
    }

    let ra = refine_two_step(t, b);
    let rb = refine_two_step(t, b2);
    // the naked refinement is branching-independent, so both threads live on
    // the same refined triangulation and the persistent edges correspond
    assert_eq!(ra.tri.gluings(), rb.tri.gluings());
    assert_eq!(ra.edge_map, rb.edge_map);

    // the refined branchings may only disagree on persistent original edges
    let persistent: Vec<usize> = ra.edge_map.clone();
    let diffs: Vec<usize> = (0..ra.branching.signs.len())
        .filter(|&c| ra.branching.signs[c] != rb.branching.signs[c])
        .collect();
    for &c in &diffs {
        assert!(
            persistent.contains(&c),
            "refined branchings agree away from the original edges"
        );
    }

    let mut steps: Vec<MoveStep> = ra.steps.clone();
    let mut cur_t = ra.tri.clone();
    let mut cur_b = ra.branching.clone();
    let mut pending: Vec<Option<usize>> = diffs.iter().map(|&c| Some(c)).collect();
    for i in 0..pending.len() {
        let e = pending[i].take().expect("each disagreeing class is inverted once");
        let rest: Vec<usize> = pending.iter().flatten().copied().collect();
        let out = expand_inversion_tracked(&cur_t, &cur_b, e, &rest)
            .expect("persistent edges stay good ambiguous through the inversions");
        steps.extend(out.steps.iter().copied());
        cur_t = out.tri;
        cur_b = out.branching;
        let mut it = out.tracked.into_iter();
        for p in pending.iter_mut().filter(|p| p.is_some()) {
            *p = it.next().flatten();
        }
    }

    // the inverted thread now carries rb's branching up to isomorphism; walk
    // rb's refinement backwards along it
    let phi = find_decorated_iso(
        &rb.tri,
        &Decoration::Branching(rb.branching.clone()),
        &cur_t,
        &Decoration::Branching(cur_b.clone()),
    )
    .expect("inverting the disagreeing edges reaches the second refined branching");
    let trace = replay_trace(t, &Decoration::Branching(b2.clone()), &rb.steps)
        .expect("a refinement certificate replays");
    let (back, fin_t, fin_b, _) =
        reverse_transported(&trace, &cur_t, &Decoration::Branching(cur_b), phi)
            .expect("the reversed refinement replays on the inverted thread");
    steps.extend(back);
    debug_assert_eq!(decorated_signature(&fin_t, &fin_b).to_string(), end);
    MoveSequence { steps, start, end }
}

//! Blow-up sequences: which points keep the multiplicity, what happens to
//! the equimultiple locus, and the resolution tree.

mod directions;
mod lemma;
mod resolve;
mod theorem;

pub use directions::{equimultiple_directions, DirectionReport};
pub use lemma::{verify_lemma, LemmaReport};
pub use resolve::{levi_zariski_resolve, NodeStatus, ResolutionNode};
pub use theorem::{classify_transform, ClassifiedCurve, CurveType, Outcome, Preimage, TheoremCase, TheoremReport};

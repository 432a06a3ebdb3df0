//! Charts glued by wall-crossing transitions: composition, cocycle checks,
//! transport of potentials, and the gauge automorphisms of the immersed chart.

pub mod atlas;
pub mod atlases;
pub mod transition;

pub use atlas::{Atlas, AtlasJson, CocycleReport, Failure, TransportReport};
pub use atlases::{gr24_atlas, gr2n_atlas, local_atlas, og15_atlas, product_transition, Slot};
pub use transition::{compose, gauge_automorphism, local_transitions, Chart, Transition, TransitionError};

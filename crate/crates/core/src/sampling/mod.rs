//! Modulus traces on segments and circles.

mod circle;
mod noise;
mod segment;
mod trace;

pub use circle::{sample_circle, sample_circle_touching, sample_circle_with};
pub use noise::add_noise;
pub use segment::{
    chebyshev_nodes, normalize_segment_pair, sample_segment, sample_segment_with, AffineMap, SegmentPair, SegmentSpec,
};
pub use trace::{ModulusTrace, SegmentSide, TraceDomain};

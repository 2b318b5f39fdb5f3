//! QoS-to-MOS mapping functions.

mod iqx;
mod table;
mod video;

use std::fmt::Debug;

pub use iqx::{iqx_mos, IqxMapping};
pub use table::{table_mos, TableMapping};
pub use video::{video_mos, VideoStallMapping};

use crate::error::Result;

/// Maps a QoS condition to a MOS value. Multi-dimensional mappings declare
/// their dimension and receive the full coordinate list.
pub trait MosMapping: Send + Sync + Debug {
    fn dimension(&self) -> usize;

    fn mos(&self, condition: &[f64]) -> Result<f64>;

    fn name(&self) -> &'static str;
}

//! Tour-vs-MST divergence barcodes.
//!
//! For a Hamiltonian cycle, dropping its heaviest edge `e_max` leaves a
//! Hamiltonian path, which is itself a spanning tree. Every edge of the
//! minimum spanning tree is matched one-to-one with an edge of that path,
//! and each pair forms a bar `(birth, death) = (w(mst edge), w(tour edge))`
//! with `death >= birth`. The bar lengths sum to `L_path - L_mst`, which
//! gives every tour edge a non-negative penalty.

mod alpha;
mod barcode;
mod oracle;
mod penalty;
mod symbolic;

pub use alpha::{alpha_scores, alpha_via_rtdl, AlphaTable};
pub use barcode::{compute_barcode, compute_barcode_with_mst, heaviest_edge_position, Bar, Barcode};
pub use oracle::{oracle_bijection, oracle_phi};
pub use penalty::{edge_penalties, penalties_with_mst, reward_shaping, PenaltyMap};
pub use symbolic::{rtdl_barcode, SymbolicBar, Weight};

//! Vietoris–Rips persistent homology over Z/2 and the development-indicator
//! pipeline built on it: ingestion and scaling, point-cloud and border-graph
//! distances, degree-0 clustering, degree-1 cycle reports and a K-means
//! baseline.

pub mod cli;
pub mod clustering;
pub mod cycles;
pub mod error;
pub mod filtration;
pub mod ingest;
pub mod metric;
pub mod persistence;
pub mod plot;
pub mod stats;

pub use error::{Error, Result};
pub use filtration::{Filtration, Simplex};
pub use ingest::{IndicatorDataset, IndicatorId};
pub use metric::{AdjacencyMatrix, DistanceMatrix};
pub use persistence::{Barcode, PersistenceInterval};

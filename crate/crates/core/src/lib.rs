//! Matchstick graphs: validation, faces, discharging, and the bounds on
//! small-degree vertices.
//!
//! A matchstick graph is a drawing with unit-length straight edges that
//! meet only at shared endpoints. The pipeline is
//!
//! 1. [`graph::PlaneGraph::validate_matchstick`] checks the drawing,
//! 2. [`faces::faces_of`] derives faces and corner angles from the coordinates,
//! 3. [`discharge::discharge`] assigns and redistributes charges,
//! 4. [`verify::verify_all`] evaluates every identity and inequality.
//!
//! [`generate`] builds the hexagonal extremal family and small examples.

pub mod discharge;
pub mod faces;
pub mod generate;
pub mod geom;
pub mod graph;
pub mod io;
pub mod svg;
pub mod verify;

pub use discharge::{ChargeLedger, ElementBoundsReport};
pub use faces::{FaceCensus, FaceSet};
pub use geom::{Point2, ToleranceConfig};
pub use graph::{DegreeHistogram, MatchstickCertificate, PlaneGraph};
pub use verify::{verify_all, verify_with, VerificationReport, VerifyOptions};

//! Convex orders on path corteges of acyclic digraphs, cubillages of cyclic
//! zonotopes, and the flip structure relating the two.
//!
//! The library has two halves that meet in the middle:
//!
//! * the *order* side ([`digraph`], [`cortege`], [`orders`]): nontrivial paths
//!   of a finite acyclic digraph are chained into corteges, linear orders on
//!   them are classified as convex or not, and the raising/lowering flips on
//!   dense corteges organize the equivalence classes into a graded poset with
//!   one minimal and one maximal element;
//! * the *geometry* side ([`zonotope`], [`cubillage`]): cyclic vector
//!   configurations over exact integers, fine zonotopal tilings (cubillages)
//!   of the cyclic zonotope `Z(n,d)`, their natural order, membranes, pies,
//!   tunnels, capsids and capsid flips.
//!
//! The [`bridge`] module carries equivalence classes of convex orders to
//! per-route cubillages and back: maximal flip chains lift to convex orders
//! one degree up, and every convex order descends to a maximal chain.
//!
//! All geometric predicates are decided by signs of exact integer
//! determinants; nothing is floating point except the SVG renderer.

pub mod bits;
pub mod bridge;
pub mod colorset;
pub mod corpus;
pub mod cortege;
pub mod cubillage;
pub mod digraph;
pub mod emit;
pub mod exact;
pub mod io;
pub mod orders;
pub mod zonotope;

use thiserror::Error;

/// Errors shared across the crate. Variants carry enough context to name the
/// offending element in reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("directed cycle detected (through vertex `{0}`)")]
    CycleDetected(String),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(String, String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("paths do not form a tandem: head `{0}` != tail `{1}`")]
    NotATandem(String, String),
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
    #[error("order is not convex: cortege {0} is neither standard nor anti-standard ({1})")]
    NotConvex(String, String),
    #[error("type assignment is not realizable: forced relations contain a cycle through {0}")]
    InconsistentAssignment(String),
    #[error("cortege {0} is not dense: {1}")]
    NotDense(String, String),
    #[error("parameter list is not strictly increasing")]
    NotIncreasing,
    #[error("facet set is not a membrane: {0}")]
    NotAMembrane(String),
    #[error("tunnel chain broken: {0}")]
    ChainBroken(String),
    #[error("capsid cubes for packet {0} are not ordered as a chain")]
    NotAChain(String),
    #[error("no cube of type {0} present")]
    NotPresent(String),
    #[error("inversion set fails the prefix/suffix criterion: {0}")]
    NotRealizable(String),
    #[error("combined route relations contain a cycle through {0}")]
    CombinedCycle(String),
    #[error("cube chase diverged: {0}")]
    ChaseDiverged(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("property violated: {0}")]
    PropertyViolated(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Enumeration caps. Every search that can blow up exponentially checks one
/// of these and returns [`Error::CapExceeded`] instead of running away.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    /// Maximum number of nontrivial paths a digraph may have.
    pub max_paths: usize,
    /// Maximum number of corteges per level.
    pub max_corteges: usize,
    /// Maximum number of nodes explored in a flip graph.
    pub max_nodes: usize,
    /// Maximum number of order ideals enumerated when listing membranes.
    pub max_ideals: usize,
    /// Maximum element count for the brute-force order search.
    pub max_brute_elements: usize,
    /// Maximum number of maximal chains explored per compatibility search.
    pub max_chains: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_paths: 100_000,
            max_corteges: 100_000,
            max_nodes: 50_000,
            max_ideals: 200_000,
            max_brute_elements: 8,
            max_chains: 100_000,
        }
    }
}

impl Caps {
    /// Default caps, with the generic enumeration caps overridden by the
    /// `CFL_CAP` environment variable when it is set to a positive integer.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(n) = std::env::var("CFL_CAP")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .filter(|&n| n > 0)
        {
            caps.max_paths = n;
            caps.max_corteges = n;
            caps.max_nodes = n;
            caps.max_ideals = n;
            caps.max_chains = n;
        }
        caps
    }
}

/// Largest color count supported by [`colorset::ColorSet`] (a `u16` bitmask).
pub const MAX_COLORS: usize = 16;

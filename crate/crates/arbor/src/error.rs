use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Variants carry node labels rather than internal indices so that messages
/// stay meaningful after the offending structure is dropped.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate node label {0:?}")]
    DuplicateNode(String),
    #[error("edge endpoint {0:?} is not a declared node")]
    UnknownEndpoint(String),
    #[error("node {0:?} has more than one parent")]
    MultipleParents(String),
    #[error("parent relation contains a cycle through {0:?}")]
    CycleDetected(String),
    #[error("node label {0:?} is empty or contains whitespace")]
    InvalidLabel(String),
    #[error("expected a tree with a single root, found roots {0:?}")]
    NotATree(Vec<String>),
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("operation requires a non-empty subset")]
    EmptySubset,
    #[error("not a maximal chain: {0}")]
    NotAPath(String),
    #[error("path does not pass through the stem of {0:?}")]
    PathNotThroughStem(String),
    #[error("not a maximal chain of the region above the stem: {0}")]
    NotAPathOfRegion(String),
    #[error("stem of {0:?} has no extension: nothing lies strictly above it")]
    StemHasNoExtension(String),
    #[error("branching-1 is undefined at the empty stem")]
    EmptyStemForBranching1,
    #[error("region has {0} nodes, above the brute-force cap of {1}")]
    TooLargeForBruteForce(usize, usize),
    #[error("nodes {0:?} and {1:?} do not lie in the same maximal bridge")]
    NotWithinBridge(String, String),
    #[error("{1:?} is not a child of {0:?}")]
    NotAnEdge(String, String),
    #[error("inserted label {0:?} collides with an existing or inserted node")]
    LabelCollision(String),
    #[error("refinement chain between {0:?} and {1:?} is empty")]
    EmptyChain(String, String),
    #[error("partition cell {0:?} is not a bridge")]
    CellNotABridge(Vec<String>),
    #[error("cells do not partition the node set: {0}")]
    NotAPartition(String),
    #[error("trees are not homeomorphic")]
    NotHomeomorphic,
    #[error("extension would have {predicted} nodes, over the budget of {budget}")]
    BudgetExceeded { predicted: u128, budget: u64 },
    #[error("node {0:?} does not belong to the extension")]
    UnknownExtNode(String),
    #[error("no component of the extension has representative {0:?}")]
    UnknownComponent(String),
    #[error("sigma assigns no image to candidate node {0:?}")]
    IncompleteSigma(String),
    #[error(
        "candidate has {0} nodes, over the search cap of {1}, and no witness subtree was supplied"
    )]
    SearchCapExceededWithoutWitness(usize, usize),
    #[error("document is not valid: {0}")]
    SchemaError(String),
    #[error("generator config is not satisfiable: {0}")]
    InvalidConfig(String),
    #[error("unknown proposition id {0:?}")]
    UnknownPropositionId(String),
}

pub type Result<T> = std::result::Result<T, Error>;

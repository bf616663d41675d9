/// Capacity budgets shared by every exponential loop in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of entries an extended operation table may hold.
    pub table_budget: u128,
    /// Largest carrier for which hyperideals / subhypermodules are enumerated.
    pub max_enum_size: usize,
    /// Up to this size enumeration filters all subsets; above it, closures are grown.
    pub naive_threshold: usize,
    /// Largest family instantiated for theorems stated over index sets.
    pub family_cap: usize,
    /// Largest lattice for which the cofinite-generation check runs literally.
    pub max_cofinite_members: usize,
    /// Largest carrier produced by an external direct sum.
    pub max_product_size: usize,
    /// Search-tree nodes a single model-search generator may visit.
    pub search_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            table_budget: 100_000_000,
            max_enum_size: 12,
            naive_threshold: 8,
            family_cap: 4,
            max_cofinite_members: 20,
            max_product_size: 128,
            search_budget: 50_000_000,
        }
    }
}

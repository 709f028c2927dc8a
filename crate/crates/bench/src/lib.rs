//! Fixed workloads for the engine benchmarks.

use std::sync::Arc;

use antimorph::category::FiniteCategory;
use antimorph::corpus;
use antimorph::group::FiniteGroup;
use antimorph::semilinear::SuiteConfig;

/// Group pairs whose hom-sets are enumerated.
pub fn group_pairs() -> Vec<(Arc<FiniteGroup>, Arc<FiniteGroup>)> {
    vec![(corpus::s3(), corpus::s3()), (corpus::d4(), corpus::d4()), (corpus::q8(), corpus::z2xz2())]
}

/// Categories for the adjunction check; the full corpus is the largest
/// input the checker accepts in reasonable time.
pub fn adjunction_corpus() -> Vec<FiniteCategory> {
    corpus::categories()
}

/// A smaller semilinear suite than the acceptance run.
pub fn semilinear_suite() -> SuiteConfig {
    SuiteConfig { count: 10, ..SuiteConfig::default() }
}

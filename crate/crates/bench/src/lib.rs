//! Inputs shared by the benchmarks.

use std::sync::Arc;

use ntl_core::enumerate::{realize, EnumerationBudget};
use ntl_core::io::catalog_lookup;
use ntl_core::{Presentation, RealizedGroup};

pub fn presentation(name: &str) -> Presentation {
    catalog_lookup(name).expect("catalog name").presentation
}

pub fn realized(name: &str) -> Arc<RealizedGroup> {
    let (g, _) = realize(&presentation(name), EnumerationBudget::default()).expect("finite group");
    Arc::new(g)
}

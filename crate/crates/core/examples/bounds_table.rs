//! The new lower bound next to earlier lower bounds and the upper bound.
//!
//! ```text
//! cargo run --example bounds_table -- [d_max]
//! ```

use colourful_depth::cli::{render_report, BoundsReport, Format};
use colourful_depth::depth::bound_formulas;

fn main() {
    let d_max: u64 = std::env::args()
        .nth(1)
        .map_or(10, |a| a.parse().expect("d_max"));
    let tables = (1..=d_max).map(|d| bound_formulas(d, 0, 0, 0, 0)).collect();
    print!(
        "{}",
        render_report(
            &BoundsReport {
                params: None,
                tables
            },
            Format::Human
        )
    );
}

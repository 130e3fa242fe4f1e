//! Region strings to county keys, and the state crosswalk.
//!
//!     cargo run --example county_names -- "Orleans Parish, LA" "Doña Ana County, NM"

use koedds::geo_names::classify_region;
use koedds::{canonicalize_county_name, StateCrosswalk};

fn main() {
    let xwalk = StateCrosswalk::bundled();
    let mut regions: Vec<String> = std::env::args().skip(1).collect();
    if regions.is_empty() {
        regions = [
            "Adams County, CO",
            "Orleans Parish, LA",
            "St. Louis city, MO",
            "Doña Ana County, NM",
            "Foo County, XX",
            "Nowhere",
        ]
        .map(String::from)
        .to_vec();
    }
    for region in &regions {
        match classify_region(region, xwalk) {
            Ok(key) => println!(
                "{region:<24} -> {key}  ({})",
                xwalk.state_name(&key.state_fips).unwrap_or("?")
            ),
            Err(e) => println!("{region:<24} -> rejected: {}", e.as_str()),
        }
    }

    // the same key from either side of a join
    for raw in ["  KING county ", "King"] {
        println!(
            "{raw:?} canonicalizes to {:?}",
            canonicalize_county_name(raw).unwrap()
        );
    }
    println!("{} states in the bundled crosswalk", xwalk.len());
}

//! Inject scores into a county FeatureCollection and show what changed.

use koedds::emit::{augment_geojson, GeoJsonOptions};
use koedds::{CountyKey, CountyScore};
use serde_json::json;

fn main() -> koedds::Result<()> {
    let doc = json!({
        "type": "FeatureCollection",
        "features": [
            {"type": "Feature", "properties": {"STATE": "08", "NAME": "Adams", "LSAD": "County"},
             "geometry": {"type": "Polygon", "coordinates": [[[0, 0], [0, 1], [1, 1], [0, 0]]]}},
            {"type": "Feature", "properties": {"STATE": 22, "NAME": "Orleans Parish"},
             "geometry": {"type": "Polygon", "coordinates": [[[2, 0], [2, 1], [3, 1], [2, 0]]]}},
            {"type": "Feature", "properties": {"STATE": "08", "NAME": "Larimer"},
             "geometry": null}
        ]
    });
    let score = |state: &str, name: &str, s: f64| CountyScore {
        key: CountyKey {
            state_fips: state.into(),
            county_name: name.into(),
        },
        growth_raw: 0.1,
        growth_norm: s,
        svi: 1.0 - s,
        resilience: s,
        score: s,
        score_viz: 1.0 - s,
    };
    let scores = [
        score("08", "adams", 0.8),
        score("22", "orleans", 0.3),
        score("13", "dekalb", 0.5),
    ];

    for invert in [true, false] {
        let opts = GeoJsonOptions {
            use_viz_inversion: invert,
            ..GeoJsonOptions::default()
        };
        let (out, report) = augment_geojson(doc.clone(), &scores, &opts)?;
        let injected: Vec<_> = out["features"]
            .as_array()
            .unwrap()
            .iter()
            .map(|f| f["properties"].get("investment_score").cloned())
            .collect();
        println!("viz inversion {invert}: {injected:?}");
        println!(
            "  matched {}/{}; unmatched features {:?}; unmatched scores {:?}",
            report.matched,
            report.features,
            report
                .unmatched_features
                .iter()
                .map(|u| &u.name)
                .collect::<Vec<_>>(),
            report
                .unmatched_scores
                .iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
        );
    }
    Ok(())
}

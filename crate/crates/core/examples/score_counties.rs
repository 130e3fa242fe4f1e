//! Join growth with resilience and rank counties under two weightings.

use koedds::{
    composite_score, min_max_normalize, resilience, score_counties, CountyAggregate, CountyKey,
    ScoreWeights, SviRecord,
};

fn county(state: &str, name: &str, growth: f64, svi: f64) -> (CountyAggregate, SviRecord) {
    let key = CountyKey {
        state_fips: state.into(),
        county_name: name.into(),
    };
    let agg = CountyAggregate {
        key: key.clone(),
        n_months: 12,
        avg_price_yoy: growth,
        avg_price_mom: growth / 12.0,
        avg_homes_sold_yoy: 0.0,
        avg_homes_sold_mom: 0.0,
    };
    let rec = SviRecord {
        county_fips: format!("{state}001"),
        key,
        svi_overall: svi,
    };
    (agg, rec)
}

fn main() -> koedds::Result<()> {
    println!(
        "normalize [2, 4, 6] = {:?}",
        min_max_normalize(&[2.0, 4.0, 6.0])?
    );
    println!("resilience(0.437) = {}", resilience(0.437)?);
    println!(
        "composite(0.8, 0.6) = {}",
        composite_score(0.8, 0.6, ScoreWeights::default())?
    );

    let (aggs, svi): (Vec<_>, Vec<_>) = [
        county("08", "adams", 0.14, 0.62),
        county("19", "polk", 0.09, 0.21),
        county("48", "travis", 0.18, 0.55),
        county("04", "maricopa", 0.21, 0.71),
        county("39", "franklin", 0.07, 0.48),
    ]
    .into_iter()
    .unzip();

    for weights in ["0.5,0.5", "0.8,0.2"] {
        let (scores, join) = score_counties(&aggs, &svi, ScoreWeights::parse(weights)?)?;
        println!("\nweights {weights} ({} joined)", join.joined);
        for s in &scores {
            println!(
                "  {:<12} growth_norm {:.3} resilience {:.3} score {:.3}",
                s.key.county_name, s.growth_norm, s.resilience, s.score
            );
        }
    }
    Ok(())
}

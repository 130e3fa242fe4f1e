//! Per-county reduction of the monthly market stream.
//!
//! Sums are kept as exact floating-point expansions, so a county mean is the
//! correctly rounded mean of its months no matter which order the rows
//! arrived in or how the input was partitioned. That makes sorting rows by
//! period before averaging unnecessary and keeps memory proportional to the
//! number of counties instead of the number of rows.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::geo_names::{classify_region, CountyKey, RegionError, StateCrosswalk};
use crate::ingest::MarketRecord;

/// Default minimum number of monthly observations for a county to be scored.
pub const DEFAULT_MIN_MONTHS: u32 = 12;

/// Exact running sum of `f64` values (Shewchuk non-overlapping partials).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExactSum {
    partials: Vec<f64>,
}

impl ExactSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let mut x = value;
        let mut kept = 0;
        for j in 0..self.partials.len() {
            let mut y = self.partials[j];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                self.partials[kept] = lo;
                kept += 1;
            }
            x = hi;
        }
        self.partials.truncate(kept);
        self.partials.push(x);
    }

    pub fn merge(&mut self, other: &ExactSum) {
        for &p in &other.partials {
            self.add(p);
        }
    }

    /// The exact sum rounded once to the nearest `f64` (ties to even).
    pub fn value(&self) -> f64 {
        let p = &self.partials;
        let Some(mut n) = p.len().checked_sub(1) else {
            return 0.0;
        };
        let mut hi = p[n];
        let mut lo = 0.0;
        while n > 0 {
            let x = hi;
            n -= 1;
            let y = p[n];
            hi = x + y;
            lo = y - (hi - x);
            if lo != 0.0 {
                break;
            }
        }
        // Half-way cases: the remaining partials decide the rounding direction.
        if n > 0 && ((lo < 0.0 && p[n - 1] < 0.0) || (lo > 0.0 && p[n - 1] > 0.0)) {
            let y = lo * 2.0;
            let x = hi + y;
            if y == x - hi {
                hi = x;
            }
        }
        hi
    }
}

/// Running statistics for one growth field.
#[derive(Debug, Clone, PartialEq)]
struct FieldStats {
    sum: ExactSum,
    min: f64,
    max: f64,
}

impl FieldStats {
    fn new() -> Self {
        FieldStats {
            sum: ExactSum::new(),
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
        }
    }

    fn push(&mut self, v: f64) {
        self.sum.add(v);
        self.min = self.min.min(v);
        self.max = self.max.max(v);
    }

    fn merge(&mut self, other: &FieldStats) {
        self.sum.merge(&other.sum);
        self.min = self.min.min(other.min);
        self.max = self.max.max(other.max);
    }

    fn mean(&self, n: u32) -> f64 {
        // Clamp guards the last-ulp case where the rounded quotient escapes
        // the observed range (e.g. twelve identical values).
        (self.sum.value() / f64::from(n)).clamp(self.min, self.max)
    }
}

#[derive(Debug, Clone, PartialEq)]
struct CountyAccumulator {
    n: u32,
    fields: [FieldStats; 4],
}

impl CountyAccumulator {
    fn new() -> Self {
        CountyAccumulator {
            n: 0,
            fields: std::array::from_fn(|_| FieldStats::new()),
        }
    }

    fn push(&mut self, rec: &MarketRecord) {
        self.n += 1;
        let values = [
            rec.median_sale_price_yoy,
            rec.median_sale_price_mom,
            rec.homes_sold_yoy,
            rec.homes_sold_mom,
        ];
        for (f, v) in self.fields.iter_mut().zip(values) {
            f.push(v);
        }
    }

    fn merge(&mut self, other: &CountyAccumulator) {
        self.n += other.n;
        for (a, b) in self.fields.iter_mut().zip(&other.fields) {
            a.merge(b);
        }
    }

    fn finish(&self, key: CountyKey) -> CountyAggregate {
        CountyAggregate {
            key,
            n_months: self.n,
            avg_price_yoy: self.fields[0].mean(self.n),
            avg_price_mom: self.fields[1].mean(self.n),
            avg_homes_sold_yoy: self.fields[2].mean(self.n),
            avg_homes_sold_mom: self.fields[3].mean(self.n),
        }
    }
}

/// Mean growth figures of one county over all of its kept months.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountyAggregate {
    pub key: CountyKey,
    pub n_months: u32,
    pub avg_price_yoy: f64,
    pub avg_price_mom: f64,
    pub avg_homes_sold_yoy: f64,
    pub avg_homes_sold_mom: f64,
}

/// Average annual growth of a county: its mean year-over-year median sale
/// price change.
pub fn annual_growth(aggregate: &CountyAggregate) -> f64 {
    aggregate.avg_price_yoy
}

/// Which aggregate field feeds the growth side of the score.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum GrowthMetric {
    #[default]
    PriceYoy,
    PriceMom,
    HomesSoldYoy,
    HomesSoldMom,
}

impl GrowthMetric {
    pub fn value(self, aggregate: &CountyAggregate) -> f64 {
        match self {
            GrowthMetric::PriceYoy => annual_growth(aggregate),
            GrowthMetric::PriceMom => aggregate.avg_price_mom,
            GrowthMetric::HomesSoldYoy => aggregate.avg_homes_sold_yoy,
            GrowthMetric::HomesSoldMom => aggregate.avg_homes_sold_mom,
        }
    }
}

/// Counters for the aggregation stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AggregateReport {
    pub records_in: u64,
    pub region_errors: BTreeMap<String, u64>,
    pub counties: u64,
    pub below_min_months: u64,
}

impl Default for AggregateReport {
    fn default() -> Self {
        AggregateReport {
            records_in: 0,
            region_errors: RegionError::ALL
                .iter()
                .map(|e| (e.as_str().to_string(), 0))
                .collect(),
            counties: 0,
            below_min_months: 0,
        }
    }
}

/// Incremental per-county reducer. Feed records with [`push`](Self::push),
/// combine partitions with [`merge`](Self::merge).
#[derive(Debug, Clone)]
pub struct CountyAggregator<'x> {
    xwalk: &'x StateCrosswalk,
    counties: BTreeMap<CountyKey, CountyAccumulator>,
    report: AggregateReport,
}

impl<'x> CountyAggregator<'x> {
    pub fn new(xwalk: &'x StateCrosswalk) -> Self {
        CountyAggregator {
            xwalk,
            counties: BTreeMap::new(),
            report: AggregateReport::default(),
        }
    }

    pub fn push(&mut self, rec: &MarketRecord) {
        self.report.records_in += 1;
        match classify_region(&rec.region, self.xwalk) {
            Ok(key) => self
                .counties
                .entry(key)
                .or_insert_with(CountyAccumulator::new)
                .push(rec),
            Err(e) => {
                *self
                    .report
                    .region_errors
                    .get_mut(e.as_str())
                    .expect("all region errors pre-registered") += 1;
            }
        }
    }

    pub fn merge(&mut self, other: CountyAggregator<'_>) {
        self.report.records_in += other.report.records_in;
        for (k, v) in other.report.region_errors {
            *self.report.region_errors.entry(k).or_insert(0) += v;
        }
        for (key, acc) in other.counties {
            match self.counties.get_mut(&key) {
                Some(mine) => mine.merge(&acc),
                None => {
                    self.counties.insert(key, acc);
                }
            }
        }
    }

    /// One aggregate per county, sorted by `(state_fips, county_name)`.
    pub fn finish(self) -> (Vec<CountyAggregate>, AggregateReport) {
        let mut report = self.report;
        report.counties = self.counties.len() as u64;
        let out = self
            .counties
            .into_iter()
            .map(|(key, acc)| acc.finish(key))
            .collect();
        (out, report)
    }
}

/// Reduces market records to one [`CountyAggregate`] per county key.
/// Records whose region is not `"<county>, <ST>"` are counted and skipped.
pub fn aggregate_by_county<'a, I>(
    records: I,
    xwalk: &StateCrosswalk,
) -> (Vec<CountyAggregate>, AggregateReport)
where
    I: IntoIterator<Item = &'a MarketRecord>,
{
    let mut agg = CountyAggregator::new(xwalk);
    for rec in records {
        agg.push(rec);
    }
    agg.finish()
}

/// Drops counties observed for fewer than `min_months` months and records
/// how many were removed.
pub fn filter_min_months(
    aggregates: Vec<CountyAggregate>,
    min_months: u32,
    report: &mut AggregateReport,
) -> Vec<CountyAggregate> {
    let before = aggregates.len();
    let kept: Vec<_> = aggregates
        .into_iter()
        .filter(|a| a.n_months >= min_months)
        .collect();
    report.below_min_months = (before - kept.len()) as u64;
    kept
}

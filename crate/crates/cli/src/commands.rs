use num_rational::BigRational;
use satotate::birch::{ap_distribution, reconcile};
use satotate::chebotarev::{chebotarev_scan, parse_generators};
use satotate::counting::HyperellipticCurve;
use satotate::exec::Exec;
use satotate::haar::{catalog, monte_carlo_moments, weight_pairs, Statistic};
use satotate::scan::scan_curve;
use satotate::stats::{
    classify, empirical_densities, empirical_density, empirical_moments, histogram, record_hits,
    tracked_masses, MomentEntry,
};
use satotate::Error;

use crate::args::*;
use crate::config::{ScanConfig, ScanFile};
use crate::format::{rational, real};
use crate::{parse_poly, read_records, records_to_jsonl, CliError, CliResult, Output};

pub fn run(cli: Cli) -> CliResult<()> {
    let common = cli.common;
    let exec = Exec::from_threads(common.threads.unwrap_or(0));
    match cli.command {
        Command::Scan(a) => scan(&common, a),
        Command::Moments(a) => emit(&common, moments(&a)?),
        Command::Density(a) => emit(&common, density(&a)?),
        Command::Hist(a) => emit(&common, hist(&a)?),
        Command::Classify(a) => emit(&common, classify_cmd(&a)?),
        Command::Catalog(a) => emit(&common, catalog_cmd(&common, &a, exec)?),
        Command::Birch(a) => emit(&common, birch(&a, exec)?),
        Command::Chebotarev(a) => emit(&common, chebotarev(&common, &a, exec)?),
    }
}

fn emit(common: &Common, csv_bytes: Vec<u8>) -> CliResult<()> {
    let mut out = Output::open(common.out.as_deref())?;
    out.write_all(&csv_bytes)?;
    out.finish()
}

/// In-memory CSV table; every row is written through the `csv` crate.
struct Table(csv::Writer<Vec<u8>>);

impl Table {
    fn new(header: &[&str]) -> Self {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header).expect("in-memory write");
        Table(w)
    }

    fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.0.write_record(fields).expect("in-memory write");
    }

    fn into_bytes(self) -> Vec<u8> {
        self.0.into_inner().expect("in-memory flush")
    }
}

fn scan(common: &Common, a: ScanArgs) -> CliResult<()> {
    let file = match &a.config {
        Some(path) => ScanFile::load(path)?,
        None => ScanFile::default(),
    };
    let cli = ScanFile {
        label: a.label,
        poly: a.poly.as_deref().map(parse_poly).transpose()?.map(|mut c| {
            c.reverse();
            c
        }),
        bound: common.bound,
        threads: common.threads,
        seed: common.seed,
        out: common.out.clone(),
    };
    let cfg = ScanConfig::resolve(file, cli)?;
    let curve = HyperellipticCurve::new(cfg.label.clone(), &cfg.coeffs)?;
    let records = scan_curve(&curve, cfg.bound, Exec::from_threads(cfg.threads)).map_err(|e| match e {
        Error::WeilViolation { .. } => CliError::Validation(e.to_string()),
        other => other.into(),
    })?;
    eprintln!("{}: {} good primes up to {}", curve.label(), records.len(), cfg.bound);
    let mut out = Output::open(cfg.out.as_deref())?;
    out.write_all(records_to_jsonl(&records).as_bytes())?;
    out.finish()
}

fn moment_fields(e: &MomentEntry) -> [String; 5] {
    [
        e.d1.to_string(),
        e.d2.to_string(),
        real(e.value),
        real(e.std_err),
        e.n.to_string(),
    ]
}

fn moments(a: &MomentsArgs) -> CliResult<Vec<u8>> {
    let records = read_records(&a.input.input)?;
    let table = empirical_moments(&records, a.dmax)?;
    if !a.cutoffs {
        let mut t = Table::new(&["d1", "d2", "value", "stderr", "n"]);
        for e in &table.entries {
            t.row(moment_fields(e));
        }
        return Ok(t.into_bytes());
    }
    let mut t = Table::new(&["bound", "d1", "d2", "value", "stderr", "n"]);
    for prefix in &table.cutoffs {
        for e in &prefix.entries {
            let mut row = vec![prefix.bound.to_string()];
            row.extend(moment_fields(e));
            t.row(row);
        }
    }
    for e in &table.entries {
        let mut row = vec!["all".to_string()];
        row.extend(moment_fields(e));
        t.row(row);
    }
    Ok(t.into_bytes())
}

fn density(a: &DensityArgs) -> CliResult<Vec<u8>> {
    let records = read_records(&a.input.input)?;
    let genus = records[0].genus();
    let targets: Vec<(Statistic, i64)> = match (&a.statistic, a.value) {
        (Some(s), Some(v)) => vec![(Statistic::parse(s)?, v)],
        (Some(s), None) => {
            let stat = Statistic::parse(s)?;
            tracked_masses(genus).into_iter().filter(|(st, _)| *st == stat).collect()
        }
        (None, _) => tracked_masses(genus),
    };
    let mut t = Table::new(&["statistic", "value", "density", "hits", "n"]);
    for (stat, v) in targets {
        let frac = empirical_density(&records, stat, v)?;
        let hits = records
            .iter()
            .map(|r| record_hits(r, stat, v))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .filter(|&h| h)
            .count();
        t.row([
            stat.name().to_string(),
            v.to_string(),
            rational(&frac),
            hits.to_string(),
            records.len().to_string(),
        ]);
    }
    Ok(t.into_bytes())
}

fn hist(a: &HistArgs) -> CliResult<Vec<u8>> {
    let records = read_records(&a.input.input)?;
    let stat = Statistic::parse(&a.statistic)?;
    let genus = records[0].genus();
    let (lo, hi) = match (stat, genus) {
        (Statistic::A1, 1) => (-2.0, 2.0),
        (Statistic::A1, _) => (-4.0, 4.0),
        (Statistic::A2, _) => (-2.0, 6.0),
    };
    let range = (a.min.unwrap_or(lo), a.max.unwrap_or(hi));
    let h = histogram(&records, stat, a.bins, range)?;
    if h.clamped > 0 {
        eprintln!("{} values outside [{}, {}] were counted in the end bins", h.clamped, range.0, range.1);
    }
    let mut t = Table::new(&["bin_left", "bin_right", "count", "density"]);
    for r in &h.rows {
        t.row([real(r.left), real(r.right), r.count.to_string(), real(r.density)]);
    }
    Ok(t.into_bytes())
}

pub const CLASSIFY_DMAX: u32 = 6;

fn classify_cmd(a: &ClassifyArgs) -> CliResult<Vec<u8>> {
    let records = read_records(&a.input.input)?;
    let table = empirical_moments(&records, CLASSIFY_DMAX)?;
    let dens = empirical_densities(&records)?;
    let ranked = classify(&table, &dens, catalog())?;
    let mut t = Table::new(&["rank", "group_id", "genus", "score"]);
    for (i, r) in ranked.iter().enumerate() {
        t.row([(i + 1).to_string(), r.id.to_string(), r.genus.to_string(), real(r.score)]);
    }
    Ok(t.into_bytes())
}

fn catalog_cmd(common: &Common, a: &CatalogArgs, exec: Exec) -> CliResult<Vec<u8>> {
    if a.components {
        let mut t = Table::new(&["group_id", "genus", "absolute_type", "end_r", "component_group", "q_realizable"]);
        for e in catalog().entries() {
            let (ty, end) = e
                .absolute_type
                .map(|(c, s)| (c.to_string(), s.to_string()))
                .unwrap_or_default();
            for row in &e.components {
                t.row([
                    e.id.to_string(),
                    e.genus.to_string(),
                    ty.clone(),
                    end.clone(),
                    row.label.to_string(),
                    row.q_realizable.to_string(),
                ]);
            }
        }
        return Ok(t.into_bytes());
    }
    let mut header = vec!["group_id", "d1", "d2", "moment", "genus", "statistic", "point", "mass"];
    if a.samples.is_some() {
        header.extend(["mc_mean", "mc_stderr"]);
    }
    let mut t = Table::new(&header);
    for e in catalog().entries() {
        let mc = a
            .samples
            .map(|n| monte_carlo_moments(e, common.seed.unwrap_or(0), n, a.weight, exec));
        for (d1, d2) in weight_pairs(e.genus, a.weight) {
            let mut row = vec![
                e.id.to_string(),
                d1.to_string(),
                d2.to_string(),
                rational(&e.exact_moment(d1, d2)?),
                e.genus.to_string(),
                String::new(),
                String::new(),
                String::new(),
            ];
            if let Some(mc) = &mc {
                let m = mc.iter().find(|m| m.d1 == d1 && m.d2 == d2).expect("same weight pairs");
                row.extend([real(m.mean), real(m.std_err)]);
            }
            t.row(row);
        }
        for (stat, v) in tracked_masses(e.genus) {
            let mass = e.theoretical_density(stat, &BigRational::from_integer(v.into()))?;
            let mut row = vec![
                e.id.to_string(),
                String::new(),
                String::new(),
                String::new(),
                e.genus.to_string(),
                stat.name().to_string(),
                v.to_string(),
                rational(&mass),
            ];
            if mc.is_some() {
                row.extend([String::new(), String::new()]);
            }
            t.row(row);
        }
    }
    Ok(t.into_bytes())
}

fn birch(a: &BirchArgs, exec: Exec) -> CliResult<Vec<u8>> {
    if a.dmax > 10 {
        return Err(CliError::Usage(format!("--dmax {} exceeds 10", a.dmax)));
    }
    if !satotate::arith::is_prime(a.p) {
        return Err(CliError::Usage(format!("--p {} is not prime", a.p)));
    }
    let dist = ap_distribution(a.p, exec)?;
    let mut t = Table::new(&["d", "bruteforce", "formula", "match", "residual_factor"]);
    for r in reconcile(&dist, a.dmax)? {
        t.row([
            r.d.to_string(),
            rational(&r.bruteforce),
            rational(&r.formula),
            r.matches.to_string(),
            r.residual_factor.as_ref().map(rational).unwrap_or_default(),
        ]);
    }
    Ok(t.into_bytes())
}

fn chebotarev(common: &Common, a: &ChebotarevArgs, exec: Exec) -> CliResult<Vec<u8>> {
    let bound = common
        .bound
        .ok_or_else(|| CliError::Usage("chebotarev needs --N".into()))?;
    let f = parse_poly(&a.poly)?;
    let degree = f.iter().rposition(|&c| c != 0).unwrap_or(0);
    let gens = parse_generators(&a.group, degree)?;
    let stats = chebotarev_scan(&f, &gens, bound, exec)?;
    eprintln!(
        "{} primes used, {} skipped",
        stats.primes_used,
        stats.skipped.len()
    );
    let mut t = Table::new(&["partition", "predicted", "observed", "frequency"]);
    for shape in stats.shapes() {
        let predicted = stats
            .predicted
            .get(shape)
            .cloned()
            .unwrap_or_else(|| BigRational::from_integer(0.into()));
        t.row([
            shape.to_string(),
            rational(&predicted),
            stats.observed.get(shape).copied().unwrap_or(0).to_string(),
            real(stats.frequency(shape)),
        ]);
    }
    Ok(t.into_bytes())
}

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use corrset_core::generic::{read_prefix_file, write_prefix_file};
use corrset_core::rational::format_rational;
use corrset_core::{
    build_schedule_with, convergence_report, correlation, ergodic_decomposition, folner_defect,
    intersection_density, nice_recurrence_witness, r3_set, recurrence_witness, stage_of, transfer_experiment,
    upper_density, BitStream, ReportRow, Schedule, ShiftMeasure, StreamLimits,
};
use num_traits::Signed;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{RunConfig, SCHEMA_VERSION};
use crate::error::CliError;
use crate::Format;

pub struct Context {
    pub out: PathBuf,
    pub format: Format,
    pub max_bits: u64,
}

impl Context {
    fn path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }

    fn stream_limits(&self, cfg: &RunConfig) -> StreamLimits {
        let mut limits = StreamLimits { max_prefix_bits: self.max_bits, ..StreamLimits::default() };
        if let Some(s) = cfg.raw.stages {
            limits.max_stages = limits.max_stages.max(s);
        }
        limits
    }
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let mut f = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut f, value)?;
    f.write_all(b"\n")?;
    f.flush()?;
    Ok(())
}

fn header(command: &str) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    m
}

fn measure_json(nu: &ShiftMeasure) -> Value {
    json!({ "kind": nu.kind(), "description": nu.describe() })
}

fn join_shifts(t: &[usize]) -> String {
    t.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn synthesize(cfg: &RunConfig, ctx: &Context) -> Result<Vec<PathBuf>, CliError> {
    let stages = *cfg.require(&cfg.raw.stages, "stages")?;
    if stages == 0 {
        return Err(CliError::validation("stages", "stages must be positive".into()));
    }
    let limits = ctx.stream_limits(cfg);
    let schedule = build_schedule_with(&cfg.measure, stages, &limits.synthesis)?;
    schedule.verify()?;
    let bits = schedule.len();
    if bits > ctx.max_bits as u128 {
        return Err(CliError::resource(format!(
            "a schedule of {stages} stages is {bits} bits long, above --max-bits {}",
            ctx.max_bits
        )));
    }
    let manifest = manifest(cfg, &schedule);
    let mut stream = BitStream::from_schedule(schedule, limits);
    let prefix = ctx.path("prefix.bin");
    write_prefix_file(&prefix, &mut stream, bits as u64)?;
    let mut written = vec![prefix];
    if cfg.raw.ascii.unwrap_or(false) {
        let path = ctx.path("prefix.txt");
        let mut f = BufWriter::new(File::create(&path)?);
        stream.for_each_chunk(bits, 1 << 20, |c| {
            f.write_all(c.to_ascii().as_bytes()).map_err(|e| corrset_core::Error::ResourceLimit(e.to_string()))
        })?;
        f.write_all(b"\n")?;
        f.flush()?;
        written.push(path);
    }
    let path = ctx.path("manifest.json");
    write_json(&path, &manifest)?;
    written.push(path);
    Ok(written)
}

fn manifest(cfg: &RunConfig, schedule: &Schedule) -> Value {
    let stages: Vec<Value> = schedule
        .stages()
        .iter()
        .map(|st| {
            let a = &st.approximant;
            json!({
                "j": st.j,
                "k": st.k,
                "eps": format_rational(&st.eps),
                "p": a.period(),
                "R": st.r.to_string(),
                "L": st.l.to_string(),
                "S": st.s.to_string(),
                "certificate": format_rational(&a.certificate),
                "certificate_exact": a.certificate_exact,
                "blocks": a.blocks,
            })
        })
        .collect();
    let la = schedule.lookahead();
    let mut m = header("synthesize");
    m.insert("measure".into(), measure_json(&cfg.measure));
    m.insert("stages".into(), Value::Array(stages));
    m.insert(
        "lookahead".into(),
        json!({
            "j": schedule.stages().len() + 1,
            "k": la.k,
            "eps": format_rational(&la.epsilon),
            "p": la.period(),
            "R": la.r0.to_string(),
            "certificate": format_rational(&la.certificate),
        }),
    );
    m.insert(
        "prefix".into(),
        json!({
            "file": "prefix.bin",
            "bits": schedule.len().to_string(),
            "header": "u64 little-endian bit count",
            "bit_order": "least significant bit first",
        }),
    );
    Value::Object(m)
}

pub fn verify(cfg: &RunConfig, ctx: &Context) -> Result<Vec<PathBuf>, CliError> {
    let grid = cfg.n_grid()?;
    let tuples = cfg.shifts()?;
    let mut stream = BitStream::new(&cfg.measure, ctx.stream_limits(cfg))?;
    let rows = match cfg.prefix_path() {
        None => convergence_report(&cfg.measure, &mut stream, &tuples, &grid)?,
        Some(path) => {
            let word = read_prefix_file(&path)?;
            let mut rows = Vec::new();
            for &n in &grid {
                stream.ensure(n + 1)?;
                let (stage, _) = stage_of(n, stream.schedule())?;
                for t in &tuples {
                    let n_usize = usize::try_from(n).map_err(|_| CliError::resource(format!("N={n} too large")))?;
                    let empirical = intersection_density(&word, t, n_usize)?;
                    let exact = correlation(&cfg.measure, t)?;
                    rows.push(ReportRow {
                        n,
                        shifts: t.clone(),
                        abs_error: (&empirical - &exact).abs(),
                        empirical,
                        exact,
                        stage,
                    });
                }
            }
            rows
        }
    };
    let path = match ctx.format {
        Format::Csv => {
            let path = ctx.path("report.csv");
            let mut w = csv::Writer::from_path(&path)?;
            w.write_record(["N", "shifts", "empirical", "exact", "abs_error", "stage"])?;
            for r in &rows {
                w.write_record([
                    r.n.to_string(),
                    join_shifts(&r.shifts),
                    format_rational(&r.empirical),
                    format_rational(&r.exact),
                    format_rational(&r.abs_error),
                    r.stage.to_string(),
                ])?;
            }
            w.flush()?;
            path
        }
        Format::Json => {
            let path = ctx.path("report.json");
            let mut m = header("verify");
            m.insert("measure".into(), measure_json(&cfg.measure));
            m.insert("rows".into(), serde_json::to_value(&rows)?);
            write_json(&path, &Value::Object(m))?;
            path
        }
    };
    Ok(vec![path])
}

pub fn densities(cfg: &RunConfig, ctx: &Context) -> Result<Vec<PathBuf>, CliError> {
    let folner = cfg.folner()?;
    let n_max = *cfg.require(&cfg.raw.n_max, "n_max")?;
    if n_max == 0 {
        return Err(CliError::validation("n_max", "n_max must be positive".into()));
    }
    let mut extent = 0u64;
    for n in 1..=n_max {
        extent = extent.max(folner.set(n)?.end());
    }
    let word = match cfg.prefix_path() {
        Some(path) => read_prefix_file(&path)?,
        None => {
            if extent > ctx.max_bits {
                return Err(CliError::resource(format!("Følner sets reach {extent}, above --max-bits")));
            }
            BitStream::new(&cfg.measure, ctx.stream_limits(cfg))?.prefix(extent)?
        }
    };
    let values = upper_density(&word, &folner, n_max)?;
    let translations = cfg.raw.translations.clone().unwrap_or_else(|| vec![1]);
    let mut defects = Vec::new();
    for &t in &translations {
        for n in 1..=n_max {
            defects.push((n, t, folner_defect(&folner, t, n)?));
        }
    }
    match ctx.format {
        Format::Csv => {
            let dpath = ctx.path("densities.csv");
            let mut w = csv::Writer::from_path(&dpath)?;
            w.write_record(["N", "density"])?;
            for (n, v) in &values {
                w.write_record([n.to_string(), format_rational(v)])?;
            }
            w.flush()?;
            let fpath = ctx.path("defects.csv");
            let mut w = csv::Writer::from_path(&fpath)?;
            w.write_record(["N", "t", "defect"])?;
            for (n, t, d) in &defects {
                w.write_record([n.to_string(), t.to_string(), format_rational(d)])?;
            }
            w.flush()?;
            Ok(vec![dpath, fpath])
        }
        Format::Json => {
            let path = ctx.path("densities.json");
            let mut m = header("densities");
            m.insert("measure".into(), measure_json(&cfg.measure));
            m.insert("folner".into(), json!(format!("{folner:?}")));
            m.insert(
                "densities".into(),
                values.iter().map(|(n, v)| json!({ "N": n, "density": format_rational(v) })).collect(),
            );
            m.insert(
                "defects".into(),
                defects
                    .iter()
                    .map(|(n, t, d)| json!({ "N": n, "t": t, "defect": format_rational(d) }))
                    .collect(),
            );
            write_json(&path, &Value::Object(m))?;
            Ok(vec![path])
        }
    }
}

pub fn reclab(cfg: &RunConfig, ctx: &Context) -> Result<Vec<PathBuf>, CliError> {
    let set = cfg.shift_set()?;
    let eps = cfg.eps()?;
    let r_max = *cfg.require(&cfg.raw.r_max, "r_max")?;
    let nu = &cfg.measure;
    let recurrence = recurrence_witness(nu, &set, r_max)?;
    let nice = nice_recurrence_witness(nu, &set, &eps, r_max)?;
    let r3 = cfg.raw.n_max.map(|n| r3_set(nu, &eps, n)).transpose()?;
    let transfer = cfg.raw.n.map(|n| transfer_experiment(nu, &set, &eps, r_max, n)).transpose()?;
    match ctx.format {
        Format::Json => {
            let path = ctx.path("reclab.json");
            let mut m = header("reclab");
            m.insert("measure".into(), measure_json(nu));
            m.insert("set".into(), json!(set.describe()));
            m.insert("eps".into(), json!(format_rational(&eps)));
            m.insert("r_max".into(), json!(r_max));
            m.insert("recurrence_witness".into(), json!(recurrence));
            m.insert("nice_recurrence_witness".into(), json!(nice));
            m.insert("r3_set".into(), json!(r3));
            m.insert("transfer".into(), serde_json::to_value(&transfer)?);
            write_json(&path, &Value::Object(m))?;
            Ok(vec![path])
        }
        Format::Csv => {
            let path = ctx.path("witnesses.csv");
            let mut w = csv::Writer::from_path(&path)?;
            let show = |o: Option<u64>| o.map_or_else(|| "none".to_string(), |r| r.to_string());
            w.write_record(["quantity", "value"])?;
            w.write_record(["recurrence_witness".to_string(), show(recurrence)])?;
            w.write_record(["nice_recurrence_witness".to_string(), show(nice)])?;
            if let Some(r3) = &r3 {
                w.write_record(["r3_set".to_string(), join(r3)])?;
            }
            if let Some(t) = &transfer {
                w.write_record(["transfer_N".to_string(), t.n.to_string()])?;
                w.write_record(["transfer_stage".to_string(), t.stage.to_string()])?;
                w.write_record(["transfer_measure_witness".to_string(), show(t.measure_witness)])?;
                w.write_record(["transfer_set_witness".to_string(), show(t.set_witness)])?;
                w.write_record(["transfer_agree".to_string(), t.agree.to_string()])?;
                w.write_record(["transfer_max_gap".to_string(), format_rational(&t.max_gap)])?;
            }
            w.flush()?;
            let mut out = vec![path];
            if let Some(t) = &transfer {
                let path = ctx.path("transfer.csv");
                let mut w = csv::Writer::from_path(&path)?;
                w.write_record(["r", "correlation", "density", "gap"])?;
                for row in &t.rows {
                    w.write_record([
                        row.r.to_string(),
                        format_rational(&row.correlation),
                        format_rational(&row.density),
                        format_rational(&row.gap),
                    ])?;
                }
                w.flush()?;
                out.push(path);
            }
            Ok(out)
        }
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn decompose(cfg: &RunConfig, ctx: &Context) -> Result<Vec<PathBuf>, CliError> {
    let parts = ergodic_decomposition(&cfg.measure)?;
    let word = |m: &ShiftMeasure| match m {
        ShiftMeasure::Periodic(w) => Some(w.to_ascii()),
        _ => None,
    };
    match ctx.format {
        Format::Csv => {
            let path = ctx.path("decomposition.csv");
            let mut w = csv::Writer::from_path(&path)?;
            w.write_record(["index", "weight", "kind", "description", "word"])?;
            for (i, (a, m)) in parts.iter().enumerate() {
                w.write_record([
                    i.to_string(),
                    format_rational(a),
                    m.kind().to_string(),
                    m.describe(),
                    word(m).unwrap_or_default(),
                ])?;
            }
            w.flush()?;
            Ok(vec![path])
        }
        Format::Json => {
            let path = ctx.path("decomposition.json");
            let mut m = header("decompose");
            m.insert("measure".into(), measure_json(&cfg.measure));
            m.insert(
                "components".into(),
                parts
                    .iter()
                    .map(|(a, m)| {
                        json!({
                            "weight": format_rational(a),
                            "kind": m.kind(),
                            "description": m.describe(),
                            "word": word(m),
                        })
                    })
                    .collect(),
            );
            write_json(&path, &Value::Object(m))?;
            Ok(vec![path])
        }
    }
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(format!("cannot create {}: {e}", dir.display())))
}

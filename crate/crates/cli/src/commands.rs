//! One function per subcommand. Each returns a `Report` carrying the JSON
//! payload and a flat table for the CSV and plot formats.

use crate::args::{parse_character, parse_int, parse_range, Config};
use serde::Serialize;
use serde_json::{json, Value};
use tilt_core::bounds::c3_max;
use tilt_core::chern::{slope_mu, to_chern_classes};
use tilt_core::error::{Error, Result};
use tilt_core::moduli::{
    ext2_vanishes, maximal_moduli, series_bundle_rank, series_chern, series_dim, series_dim_rr, MaximalModuli,
    Series, SeriesParams,
};
use tilt_core::rational::{fmt, int, parse, to_f64};
use tilt_core::tilt::vertical_wall;
use tilt_core::walls::{group_walls, scan_walls, verify_all, verify_bound_case, BetaWindow, CaseReport};
use tilt_core::{Rational, Slope, Truncation, VarietyId};

pub const DEFAULT_RANK_MAX: i64 = 4;
pub const DEFAULT_SAMPLES: usize = 64;
pub const DEFAULT_D_MIN: i64 = -5;

pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub results: Value,
    pub warnings: Vec<String>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// (wall_id, beta, alpha) samples; walls only.
    pub plot: Option<Vec<(String, f64, f64)>>,
    /// Set by `verify` when a case fails.
    pub failed: bool,
}

impl Report {
    fn new(command: &'static str, inputs: Value, results: Value, header: Vec<&'static str>) -> Self {
        Report { command, inputs, results, warnings: vec![], header, rows: vec![], plot: None, failed: false }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn t3(t: &Truncation) -> String {
    format!("({},{},{})", t.r, t.c, t.d)
}

fn opt(x: &Option<Rational>) -> String {
    x.as_ref().map(fmt).unwrap_or_default()
}

/// Left of the vertical wall for positive rank, right of it for negative rank.
pub fn default_window(v: &tilt_core::ChernCharacter) -> BetaWindow {
    match slope_mu(v) {
        Slope::Finite(mu) if v.r > 0 => BetaWindow::new(&mu - int(4), mu),
        Slope::Finite(mu) => BetaWindow::new(mu.clone(), mu + int(4)),
        Slope::PlusInfinity => BetaWindow::new(int(-4), int(4)),
    }
}

pub struct WallsArgs {
    pub v: String,
    pub rank_max: Option<i64>,
    pub window: Option<BetaWindow>,
    pub min_radius_sq: Option<String>,
    pub samples: Option<usize>,
}

pub fn walls(a: WallsArgs, cfg: &Config) -> Result<Report> {
    let v = parse_character(&a.v)?;
    let rank_max = a.rank_max.or(cfg.rank_max).unwrap_or(DEFAULT_RANK_MAX);
    let window = a.window.or_else(|| cfg.beta_window.clone()).unwrap_or_else(|| default_window(&v));
    let min_r2 = match &a.min_radius_sq {
        Some(s) => parse(s)?,
        None => cfg.min_radius_sq.clone().unwrap_or_else(|| int(0)),
    };
    let samples = a.samples.or(cfg.samples).unwrap_or(DEFAULT_SAMPLES).max(2);
    let scan = scan_walls(&v, rank_max, &window, &min_r2)?;
    let vt = Truncation::from(&v);
    let vertical = vertical_wall(&vt).filter(|b| window.lo <= *b && *b <= window.hi);

    let groups = group_walls(&scan.candidates);
    let mut walls_json = Vec::new();
    let mut rows = Vec::new();
    if let Some(b) = &vertical {
        rows.push(vec!["vertical".into(), fmt(b), String::new(), String::new(), String::new(), String::new(), String::new()]);
    }
    for (i, g) in groups.iter().enumerate() {
        let id = format!("w{}", i + 1);
        let mut wits = Vec::new();
        for c in scan.candidates.iter().filter(|c| c.wall.circle() == Some((&g.center, &g.radius_sq))) {
            wits.push(json!({
                "w": to_value(&c.w),
                "complement": to_value(&c.complement()),
                "side": to_value(&c.side),
                "constraints": c.satisfied_constraints,
            }));
            rows.push(vec![
                id.clone(),
                fmt(&g.center),
                fmt(&g.radius_sq),
                t3(&c.w),
                t3(&c.complement()),
                to_value(&c.side).as_str().unwrap_or_default().to_string(),
                c.satisfied_constraints.join(";"),
            ]);
        }
        walls_json.push(json!({
            "id": id,
            "center": fmt(&g.center),
            "radius_sq": fmt(&g.radius_sq),
            "witnesses": wits,
        }));
    }

    let mut plot = Vec::new();
    let top = groups.iter().map(|g| to_f64(&g.radius_sq).sqrt()).fold(1.0, f64::max);
    for (i, g) in groups.iter().enumerate() {
        let (s, rho) = (to_f64(&g.center), to_f64(&g.radius_sq).sqrt());
        for j in 0..samples {
            let b = s - rho + 2.0 * rho * j as f64 / (samples - 1) as f64;
            let a = (rho * rho - (b - s) * (b - s)).max(0.0).sqrt();
            plot.push((format!("w{}", i + 1), b, a));
        }
    }
    if let Some(b) = &vertical {
        for j in 0..samples {
            plot.push(("vertical".into(), to_f64(b), top * j as f64 / (samples - 1) as f64));
        }
    }

    let inputs = json!({
        "v": to_value(&v),
        "rank_max": rank_max,
        "beta_window": to_value(&window),
        "min_radius_sq": fmt(&min_r2),
    });
    let results = json!({
        "vertical_wall": vertical.as_ref().map(fmt),
        "walls": walls_json,
        "exhaustive": scan.exhaustive,
    });
    let mut r = Report::new(
        "walls",
        inputs,
        results,
        vec!["wall_id", "center", "radius_sq", "w", "complement", "side", "constraints"],
    );
    if window.is_empty() {
        r.warnings.push("beta window is empty".into());
    }
    if !scan.exhaustive {
        r.warnings.push("some rank/ch1 cells were unbounded; the list may be incomplete".into());
    }
    r.rows = rows;
    r.plot = Some(plot);
    Ok(r)
}

pub fn c3max(variety: &str, c1: &str, range: &str, general_type: bool) -> Result<Report> {
    let x: VarietyId = variety.parse()?;
    let c1 = parse_int(c1)?;
    let (lo, hi) = parse_range(range)?;
    if lo > hi {
        return Err(Error::Parse(format!("empty c2 range {lo}:{hi}")));
    }
    let mut table = Vec::new();
    let mut rows = Vec::new();
    for c2 in lo..=hi {
        let b = c3_max(x, c1, c2, general_type)?;
        rows.push(vec![
            c2.to_string(),
            fmt(&b.c3_max),
            opt(&b.c3_max_raw),
            fmt(&b.e_max),
            to_value(&b.regime).as_str().unwrap_or_default().to_string(),
            b.caveats.join("; "),
        ]);
        table.push(json!({
            "c2": c2,
            "c3_max": fmt(&b.c3_max),
            "c3_max_raw": b.c3_max_raw.as_ref().map(fmt),
            "e_max": fmt(&b.e_max),
            "regime": to_value(&b.regime),
            "witnesses": b.witnesses.iter().map(|w| w.label.clone()).collect::<Vec<_>>(),
            "caveats": b.caveats,
        }));
    }
    let inputs = json!({ "variety": x, "c1": c1, "c2_range": [lo, hi], "general_type": general_type });
    let mut r = Report::new("c3max", inputs, json!({ "rows": table }), vec!["c2", "c3_max", "c3_max_raw", "e_max", "regime", "caveats"]);
    r.rows = rows;
    Ok(r)
}

/// `SERIES@VARIETY` followed by k=, m=, n= assignments; k defaults to 1 and n
/// to the value the series prescribes.
pub fn dim(spec: &str, assignments: &[String]) -> Result<Report> {
    let (s, x) = spec
        .split_once('@')
        .ok_or_else(|| Error::Parse(format!("`{spec}`: expected SERIES@VARIETY")))?;
    let series: Series = s.parse()?;
    let variety: VarietyId = x.parse()?;
    let (mut k, mut m, mut n) = (1, None, None);
    for a in assignments {
        let (key, val) = a
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("`{a}`: expected key=value")))?;
        let val = parse_int(val)?;
        match key.trim() {
            "k" => k = val,
            "m" => m = Some(val),
            "n" => n = Some(val),
            other => return Err(Error::Parse(format!("unknown parameter `{other}`"))),
        }
    }
    let m = m.ok_or_else(|| Error::Parse("missing m=<integer>".into()))?;
    let mut p = SeriesParams::new(series, variety, k, m)?;
    if let Some(n) = n {
        p.n = n;
        p.validate()?;
    }
    let ch = series_chern(&p)?;
    let cl = to_chern_classes(&ch)?;
    let d = series_dim(&p)?;
    let d_rr = series_dim_rr(&p)?;
    let rank = series_bundle_rank(&p);
    let ext2 = if series == Series::A { Some(ext2_vanishes(&p)?) } else { None };
    let inputs = json!({ "series": series, "variety": variety, "k": p.k, "m": p.m, "n": p.n });
    let results = json!({
        "chern_character": to_value(&ch),
        "chern_classes": to_value(&cl),
        "dim": d,
        "dim_rr": d_rr,
        "bundle_rank": rank,
        "ext2_vanishes": ext2,
    });
    let mut r = Report::new(
        "dim",
        inputs,
        results,
        vec!["series", "variety", "k", "m", "n", "c1", "c2", "c3", "dim", "dim_rr", "bundle_rank", "ext2_vanishes"],
    );
    if d != d_rr {
        r.warnings.push(format!("closed formula {d} differs from the Riemann-Roch count {d_rr}"));
    }
    let show = |x: Option<String>| x.unwrap_or_default();
    r.rows.push(vec![
        series.to_string(),
        variety.to_string(),
        p.k.to_string(),
        p.m.to_string(),
        p.n.to_string(),
        cl.c1.to_string(),
        cl.c2.to_string(),
        cl.c3.to_string(),
        d.to_string(),
        d_rr.to_string(),
        show(rank.map(|x| x.to_string())),
        show(ext2.map(|x| x.to_string())),
    ]);
    Ok(r)
}

pub fn classify(c1: &str, c2: &str, variety: Option<&str>) -> Result<Report> {
    let x = match variety {
        Some(v) => crate::args::parse_variety(v)?,
        None => VarietyId::X2,
    };
    let (c1, c2) = (parse_int(c1)?, parse_int(c2)?);
    let m = maximal_moduli(x, c1, c2)?;
    let inputs = json!({ "variety": x, "c1": c1, "c2": c2 });
    let mut r = Report::new(
        "classify",
        inputs,
        to_value(&m),
        vec!["component", "c3_max", "dim", "fibration", "base", "base_dim", "bundle_rank", "smooth"],
    );
    let s = |v: Value| match v {
        Value::Null => String::new(),
        Value::String(s) => s,
        other => other.to_string(),
    };
    match &m {
        MaximalModuli::Generic(g) => r.rows.push(vec![
            g.reference.clone(),
            g.c3_max.to_string(),
            g.dim.to_string(),
            s(to_value(&g.fibration)),
            s(to_value(&g.base)),
            g.base_dim.to_string(),
            g.bundle_rank.to_string(),
            g.smooth.to_string(),
        ]),
        MaximalModuli::Special(sp) => {
            r.rows.push(vec![
                "total".to_string(),
                sp.c3_max.to_string(),
                sp.dim.to_string(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                s(to_value(&sp.smooth)),
            ]);
            for c in &sp.components {
                r.rows.push(vec![
                    c.name.clone(),
                    sp.c3_max.to_string(),
                    c.dim.to_string(),
                    s(to_value(&c.fibration)),
                    s(to_value(&c.base)),
                    s(to_value(&c.base_dim)),
                    s(to_value(&c.bundle_rank)),
                    String::new(),
                ]);
            }
        }
    }
    Ok(r)
}

fn case_json(c: &CaseReport) -> Value {
    let walls: Vec<Value> = group_walls(&c.destabilizers)
        .iter()
        .map(|g| {
            json!({
                "center": fmt(&g.center),
                "radius_sq": fmt(&g.radius_sq),
                "witnesses": g.witnesses.iter().map(t3).collect::<Vec<_>>(),
            })
        })
        .collect();
    let wits: Vec<Value> = c
        .witnesses
        .iter()
        .map(|w| json!({ "label": w.witness.label, "kind": to_value(&w.witness.kind), "found": w.found, "detail": w.detail }))
        .collect();
    json!({
        "c": c.c,
        "d": fmt(&c.d),
        "e_max": fmt(&c.e_max),
        "case": c.case,
        "window": to_value(&c.window),
        "rank_max": c.rank_max,
        "walls": walls,
        "witnesses": wits,
        "exhaustive": c.exhaustive,
        "ok": c.ok,
    })
}

/// `all`, or a single case given as "c,d".
pub fn verify(lemma: &str, d_min: i64) -> Result<Report> {
    let reports = if lemma == "all" {
        verify_all(d_min)?
    } else {
        let (c, d) = lemma
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("`{lemma}`: expected `all` or c,d")))?;
        vec![verify_bound_case(parse_int(c)?, &parse(d)?)?]
    };
    let inputs = if lemma == "all" { json!({ "lemma": "all", "d_min": d_min }) } else { json!({ "lemma": lemma }) };
    let failed: Vec<String> = reports.iter().filter(|c| !c.ok).map(|c| format!("{} ({})", c.case, fmt(&c.d))).collect();
    let results = json!({
        "cases": reports.iter().map(case_json).collect::<Vec<_>>(),
        "all_ok": failed.is_empty(),
    });
    let mut r = Report::new("verify", inputs, results, vec!["c", "d", "e_max", "case", "walls", "witnesses_found", "exhaustive", "ok"]);
    for c in &reports {
        r.rows.push(vec![
            c.c.to_string(),
            fmt(&c.d),
            fmt(&c.e_max),
            c.case.clone(),
            group_walls(&c.destabilizers).len().to_string(),
            format!("{}/{}", c.witnesses.iter().filter(|w| w.found).count(), c.witnesses.len()),
            c.exhaustive.to_string(),
            c.ok.to_string(),
        ]);
    }
    if !failed.is_empty() {
        r.warnings.push(format!("failing cases: {}", failed.join(", ")));
        r.failed = true;
    }
    Ok(r)
}

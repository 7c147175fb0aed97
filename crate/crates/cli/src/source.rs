use std::io::Read;

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use metakit::catalog::lookup;
use metakit::input::{parse_input, DatumSpec};
use metakit::metalattice::MetaplecticDatum;

/// Where the datum comes from.
#[derive(Args, Debug, Clone, Default)]
pub struct DatumArgs {
    /// Built-in catalog entry, e.g. `sl2-n3`.
    #[arg(long, conflicts_with = "input")]
    pub catalog: Option<String>,
    /// JSON datum file, or `-` for standard input.
    #[arg(long)]
    pub input: Option<String>,
}

/// Cover parameters; each overrides the corresponding field of the datum.
#[derive(Args, Debug, Clone, Default)]
pub struct CoverArgs {
    /// Residue field size (a prime with 2n | q-1).
    #[arg(long)]
    pub q: Option<u64>,
    /// Degree of the cover.
    #[arg(long)]
    pub n: Option<u64>,
    /// Q(α) for the rank-one group SL(2).
    #[arg(long = "Q")]
    pub q_alpha: Option<i64>,
}

pub struct Resolved {
    pub name: String,
    pub spec: DatumSpec,
    pub datum: MetaplecticDatum,
}

fn read_text(path: &str) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text).context("reading standard input")?;
    } else {
        text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    }
    Ok(text)
}

fn sl2_spec(q_alpha: i64, n: u64, q: Option<u64>) -> DatumSpec {
    DatumSpec { rank: 1, simple_coroots: vec![vec![1]], simple_roots: vec![vec![2]], b: vec![vec![2 * q_alpha]], n: n as i64, q }
}

/// `Q(α)` when the datum is `SL(2)` in its standard coordinates.
pub fn sl2_q_alpha(spec: &DatumSpec) -> Option<i64> {
    let standard = spec.rank == 1 && spec.simple_coroots == [vec![1]] && spec.simple_roots == [vec![2]];
    standard.then(|| spec.b[0][0] / 2)
}

/// Catalog entry, then input file, then an `SL(2)` datum built from the flags.
pub fn resolve(datum: &DatumArgs, cover: &CoverArgs) -> Result<Resolved> {
    let (name, mut spec) = if let Some(name) = &datum.catalog {
        (name.clone(), lookup(name)?.datum)
    } else if let Some(path) = &datum.input {
        let (spec, _) = parse_input(&read_text(path)?).with_context(|| format!("invalid datum in {path}"))?;
        (path.clone(), spec)
    } else {
        let (Some(n), Some(qa)) = (cover.n, cover.q_alpha) else {
            bail!("give --catalog, --input, or both --n and --Q for SL(2)");
        };
        ("sl2".to_string(), sl2_spec(qa, n, cover.q))
    };
    if let Some(q) = cover.q {
        spec.q = Some(q);
    }
    if let Some(n) = cover.n {
        spec.n = n as i64;
    }
    if let Some(qa) = cover.q_alpha {
        if sl2_q_alpha(&spec).is_none() {
            bail!("--Q only applies to SL(2) data");
        }
        spec.b = vec![vec![2 * qa]];
    }
    let datum = spec.validate().with_context(|| format!("invalid datum `{name}`"))?;
    Ok(Resolved { name, spec, datum })
}

/// `(q, n, Q(α))` for the rank-one engine.
pub struct Sl2Params {
    pub q: u64,
    pub n: u64,
    pub q_alpha: i64,
}

pub fn sl2_params(datum: &DatumArgs, cover: &CoverArgs) -> Result<Sl2Params> {
    let r = resolve(datum, cover)?;
    let q_alpha = sl2_q_alpha(&r.spec).ok_or_else(|| anyhow!("`{}` is not SL(2); the rank-one engine needs SL(2)", r.name))?;
    let q = r.spec.q.ok_or_else(|| anyhow!("the rank-one engine needs --q"))?;
    Ok(Sl2Params { q, n: r.spec.n as u64, q_alpha })
}

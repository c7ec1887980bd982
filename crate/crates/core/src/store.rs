//! On-disk memoization of matrices and Ext cells, and chart documents.
//!
//! Cache payloads are plain text:
//!
//! ```text
//! motivic-ext-cache 1 differential real 3 1 2 2
//! dims 1 2
//! 0 0 1
//! 0 1 2
//! sha256 <hex digest of everything above>
//! ```
//!
//! Triplets are sorted row-major, so equal matrices always produce equal
//! bytes. Files land under `<root>/<schema>/<side>/<p>/<kind>/<f>_<m>_<n>.dat`
//! via write-to-temp-then-rename.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bigraded::{Bidegree, Tridegree};
use crate::error::{Error, Result};
use crate::ext::{ComparisonCell, ExtChart, Verdict, Window};
use crate::fplinalg::FpMatrix;
use crate::steenrod::{AlgebraParams, Side};

pub const SCHEMA_VERSION: &str = "1";
const MAGIC: &str = "motivic-ext-cache";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CacheKind {
    Differential,
    Comparison,
    ExtCell,
}

impl CacheKind {
    pub fn name(self) -> &'static str {
        match self {
            CacheKind::Differential => "differential",
            CacheKind::Comparison => "comparison",
            CacheKind::ExtCell => "ext_cell",
        }
    }
}

impl FromStr for CacheKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "differential" => Ok(CacheKind::Differential),
            "comparison" => Ok(CacheKind::Comparison),
            "ext_cell" => Ok(CacheKind::ExtCell),
            other => Err(Error::Payload(format!("unknown cache kind {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CacheKey {
    pub schema_version: String,
    pub side: Side,
    pub p: u32,
    pub f: u32,
    pub m: i64,
    pub n: i64,
    pub kind: CacheKind,
}

impl CacheKey {
    pub fn new(side: Side, p: u32, kind: CacheKind, t: Tridegree) -> Self {
        CacheKey {
            schema_version: SCHEMA_VERSION.to_string(),
            side,
            p,
            f: t.f,
            m: t.deg.m,
            n: t.deg.n,
            kind,
        }
    }

    pub fn tridegree(&self) -> Tridegree {
        Tridegree { f: self.f, deg: Bidegree::new(self.m, self.n) }
    }

    pub fn relative_path(&self) -> PathBuf {
        [
            self.schema_version.as_str(),
            self.side.name(),
            &self.p.to_string(),
            self.kind.name(),
            &format!("{}_{}_{}.dat", self.f, self.m, self.n),
        ]
        .iter()
        .collect()
    }

    fn header(&self) -> String {
        format!(
            "{MAGIC} {} {} {} {} {} {} {}",
            self.schema_version,
            self.kind.name(),
            self.side.name(),
            self.p,
            self.f,
            self.m,
            self.n
        )
    }
}

impl fmt::Display for CacheKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.relative_path().display())
    }
}

fn digest_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Canonical payload for a matrix under `key`.
pub fn encode_matrix(key: &CacheKey, m: &FpMatrix) -> String {
    let mut body = format!("{}\ndims {} {}\n", key.header(), m.rows(), m.cols());
    for &(r, c, v) in m.entries() {
        let _ = writeln!(body, "{r} {c} {v}");
    }
    let sum = digest_hex(body.as_bytes());
    let _ = writeln!(body, "sha256 {sum}");
    body
}

pub fn decode_matrix(key: &CacheKey, payload: &str) -> Result<FpMatrix> {
    let bad = |what: &str| Error::Payload(format!("{key}: {what}"));
    let body_end = payload.trim_end_matches('\n').rfind('\n').ok_or_else(|| bad("truncated"))? + 1;
    let (body, trailer) = payload.split_at(body_end);
    let expected = trailer.trim_end().strip_prefix("sha256 ").ok_or_else(|| bad("missing checksum"))?;
    if digest_hex(body.as_bytes()) != expected {
        return Err(bad("checksum mismatch"));
    }
    let mut lines = body.lines();
    if lines.next() != Some(key.header().as_str()) {
        return Err(bad("header does not match key"));
    }
    let dims: Vec<usize> = lines
        .next()
        .and_then(|l| l.strip_prefix("dims "))
        .ok_or_else(|| bad("missing dims"))?
        .split(' ')
        .map(|x| x.parse().map_err(|_| bad("bad dims")))
        .collect::<Result<_>>()?;
    let [rows, cols] = dims[..] else { return Err(bad("bad dims")) };
    let mut triplets = Vec::new();
    for line in lines {
        let v: Vec<u32> =
            line.split(' ').map(|x| x.parse().map_err(|_| bad("bad triplet"))).collect::<Result<_>>()?;
        let [r, c, x] = v[..] else { return Err(bad("bad triplet")) };
        triplets.push((r, c, i64::from(x)));
    }
    let m = FpMatrix::from_triplets(key.p, rows, cols, triplets)?;
    if encode_matrix(key, &m) != payload {
        return Err(bad("payload is not canonical"));
    }
    Ok(m)
}

static TEMP_COUNTER: AtomicU64 = AtomicU64::new(0);

#[derive(Clone, Debug)]
pub struct Store {
    root: PathBuf,
}

impl Store {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Store { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path(&self, key: &CacheKey) -> PathBuf {
        self.root.join(key.relative_path())
    }

    /// Raw payload bytes, or `None` on a miss.
    pub fn get(&self, key: &CacheKey) -> Option<String> {
        fs::read_to_string(self.path(key)).ok()
    }

    pub fn put(&self, key: &CacheKey, payload: &str) -> Result<()> {
        let path = self.path(key);
        let dir = path.parent().expect("cache paths have a parent");
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!(
            ".{}.{}.{}.tmp",
            path.file_name().and_then(|s| s.to_str()).unwrap_or("payload"),
            std::process::id(),
            TEMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, payload)?;
        fs::rename(&tmp, &path).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })?;
        Ok(())
    }

    /// A corrupt or mismatched payload is reported and treated as a miss.
    pub fn get_matrix(&self, key: &CacheKey) -> Option<FpMatrix> {
        let payload = self.get(key)?;
        match decode_matrix(key, &payload) {
            Ok(m) => Some(m),
            Err(e) => {
                log::warn!("ignoring cache entry: {e}");
                None
            }
        }
    }

    /// Write failures only cost a recomputation later, so they are logged.
    pub fn put_matrix(&self, key: &CacheKey, m: &FpMatrix) {
        if let Err(e) = self.put(key, &encode_matrix(key, m)) {
            log::warn!("could not write cache entry {key}: {e}");
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChartFormat {
    Ascii,
    Svg,
    Json,
}

impl FromStr for ChartFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ascii" => Ok(ChartFormat::Ascii),
            "svg" => Ok(ChartFormat::Svg),
            "json" => Ok(ChartFormat::Json),
            other => Err(Error::Payload(format!("unknown chart format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraRecord {
    pub side: Side,
    pub prime: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub f: u32,
    pub m: i64,
    pub n: i64,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
}

impl CellRecord {
    pub fn tridegree(&self) -> Tridegree {
        Tridegree::new(self.f, self.m, self.n)
    }

    /// Adams chart coordinates (stem, filtration).
    pub fn xy(&self) -> (i64, u32) {
        (self.m + self.n - i64::from(self.f), self.f)
    }
}

/// Serializable view of a chart: dimensions, plus comparison data when present.
/// Only cells with something to show are listed; every other cell of the
/// window has dimension 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartDocument {
    pub schema: String,
    pub algebra: AlgebraRecord,
    pub window: Window,
    pub cells: Vec<CellRecord>,
}

impl ChartDocument {
    pub fn from_chart(chart: &ExtChart) -> Self {
        let cells = chart
            .cells
            .iter()
            .filter_map(|(t, cell)| {
                let cmp: Option<&ComparisonCell> = chart.comparisons.get(t);
                let visible = cell.dimension > 0 || cmp.is_some_and(|c| c.target_dim > 0);
                visible.then(|| CellRecord {
                    f: t.f,
                    m: t.deg.m,
                    n: t.deg.n,
                    dim: cell.dimension,
                    map_rank: cmp.map(|c| c.map_rank),
                    verdict: cmp.map(|c| c.verdict),
                })
            })
            .collect();
        ChartDocument {
            schema: SCHEMA_VERSION.to_string(),
            algebra: AlgebraRecord { side: chart.params.side(), prime: chart.params.p() },
            window: chart.window,
            cells,
        }
    }

    pub fn params(&self) -> Result<AlgebraParams> {
        AlgebraParams::new(self.algebra.prime, self.algebra.side)
    }

    /// Dimension at every tridegree of the window.
    pub fn dimensions(&self) -> BTreeMap<Tridegree, usize> {
        let mut dims: BTreeMap<Tridegree, usize> =
            self.window.tridegrees().into_iter().map(|t| (t, 0)).collect();
        for c in &self.cells {
            dims.insert(c.tridegree(), c.dim);
        }
        dims
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("chart documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    fn weights(&self) -> Vec<i64> {
        if self.window.is_empty() {
            Vec::new()
        } else {
            (self.window.min_weight..=self.window.max_weight).collect()
        }
    }

    fn page(&self, n: i64) -> BTreeMap<(i64, u32), &CellRecord> {
        self.cells.iter().filter(|c| c.n == n && c.dim > 0).map(|c| (c.xy(), c)).collect()
    }

    pub fn to_ascii(&self) -> String {
        let w = &self.window;
        let mut out = format!("# {} p={} f<={} total<={}\n", self.algebra.side, self.algebra.prime, w.max_f, w.max_total);
        let (x0, x1) = (-i64::from(w.max_f), w.max_total);
        for n in self.weights() {
            let page = self.page(n);
            let _ = writeln!(out, "\nweight {n}");
            for f in (0..=w.max_f).rev() {
                let _ = write!(out, "{f:>3} |");
                for x in x0..=x1 {
                    let mark = match page.get(&(x, f)).map(|c| c.dim) {
                        None => '.',
                        Some(d) if d < 10 => char::from_digit(d as u32, 10).expect("digit"),
                        Some(_) => '+',
                    };
                    out.push(' ');
                    out.push(mark);
                }
                out.push('\n');
            }
            let _ = writeln!(out, "    +{}", "--".repeat((x1 - x0 + 1) as usize));
            let _ = writeln!(out, "     x = {x0}..{x1}");
        }
        out
    }

    pub fn to_svg(&self) -> String {
        const CELL: i64 = 20;
        const MARGIN: i64 = 30;
        let w = &self.window;
        let (x0, x1) = (-i64::from(w.max_f), w.max_total.max(0));
        let page_w = (x1 - x0 + 1) * CELL + 2 * MARGIN;
        let page_h = (i64::from(w.max_f) + 1) * CELL + 2 * MARGIN;
        let weights = self.weights();
        let total_h = page_h * weights.len().max(1) as i64;
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{page_w}\" height=\"{total_h}\" font-family=\"monospace\" font-size=\"10\">\n"
        );
        for (i, n) in weights.iter().enumerate() {
            let top = i as i64 * page_h;
            let _ = writeln!(out, "<g class=\"page\" data-weight=\"{n}\" transform=\"translate(0,{top})\">");
            let _ = writeln!(out, "<text x=\"4\" y=\"14\">weight {n}</text>");
            let base = page_h - MARGIN;
            let _ = writeln!(
                out,
                "<line x1=\"{MARGIN}\" y1=\"{base}\" x2=\"{}\" y2=\"{base}\" stroke=\"#999\"/>",
                page_w - MARGIN
            );
            for (&(x, f), c) in &self.page(*n) {
                let cx = MARGIN + (x - x0) * CELL + CELL / 2;
                let cy = base - i64::from(f) * CELL - CELL / 2;
                let _ = write!(
                    out,
                    "<circle data-x=\"{x}\" data-y=\"{f}\" data-dim=\"{}\" cx=\"{cx}\" cy=\"{cy}\" r=\"3\"/>",
                    c.dim
                );
                if c.dim > 1 {
                    let _ = write!(out, "<text x=\"{}\" y=\"{}\">{}</text>", cx + 4, cy - 4, c.dim);
                }
                out.push('\n');
            }
            out.push_str("</g>\n");
        }
        out.push_str("</svg>\n");
        out
    }

    pub fn render(&self, format: ChartFormat) -> String {
        match format {
            ChartFormat::Ascii => self.to_ascii(),
            ChartFormat::Svg => self.to_svg(),
            ChartFormat::Json => self.to_json(),
        }
    }
}

pub fn emit_chart(chart: &ExtChart, format: ChartFormat) -> String {
    ChartDocument::from_chart(chart).render(format)
}

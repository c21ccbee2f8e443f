use std::fmt::Write as _;
use std::str::FromStr;

use super::run::Method;
use super::BenchError;
use crate::quad::RuleKind;

pub const CSV_HEADER: [&str; 15] = [
    "method",
    "family",
    "d",
    "N",
    "M",
    "m",
    "r",
    "value",
    "ref",
    "rel_error",
    "wall_seconds",
    "peak_monomials",
    "eval_count",
    "seed",
    "status",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Timed while other rows ran concurrently.
    Contended,
    Failed(String),
}

impl Status {
    pub fn is_failed(&self) -> bool {
        matches!(self, Status::Failed(_))
    }

    fn render(&self) -> String {
        match self {
            Status::Ok => "ok".into(),
            Status::Contended => "contended".into(),
            Status::Failed(why) if why.is_empty() => "failed".into(),
            Status::Failed(why) => format!("failed: {why}"),
        }
    }

    fn read(s: &str) -> Result<Status, BenchError> {
        match s {
            "ok" => Ok(Status::Ok),
            "contended" => Ok(Status::Contended),
            "failed" => Ok(Status::Failed(String::new())),
            _ => s
                .strip_prefix("failed: ")
                .map(|why| Status::Failed(why.to_string()))
                .ok_or_else(|| BenchError::Csv(format!("bad status `{s}`"))),
        }
    }
}

/// One row of benchmark output.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub method: Method,
    pub family: String,
    pub d: usize,
    /// Nodes per axis (tensor methods).
    pub n: Option<usize>,
    /// Sample count (Monte Carlo).
    pub samples: Option<u64>,
    pub m: Option<usize>,
    pub r: Option<RuleKind>,
    pub value: Option<f64>,
    pub reference: Option<f64>,
    pub rel_error: Option<f64>,
    pub wall_seconds: f64,
    pub peak_monomials: Option<usize>,
    pub eval_count: Option<u64>,
    pub seed: Option<u64>,
    pub status: Status,
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn read_opt<T: FromStr>(s: &str, column: &str) -> Result<Option<T>, BenchError> {
    if s.is_empty() {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| BenchError::Csv(format!("bad {column} `{s}`")))
}

impl RunReport {
    fn fields(&self) -> [String; 15] {
        [
            self.method.name().to_string(),
            self.family.clone(),
            self.d.to_string(),
            opt(&self.n),
            opt(&self.samples),
            opt(&self.m),
            opt(&self.r.map(RuleKind::number)),
            opt(&self.value),
            opt(&self.reference),
            opt(&self.rel_error),
            self.wall_seconds.to_string(),
            opt(&self.peak_monomials),
            opt(&self.eval_count),
            opt(&self.seed),
            self.status.render(),
        ]
    }

    fn from_fields(f: &csv::StringRecord) -> Result<RunReport, BenchError> {
        if f.len() != CSV_HEADER.len() {
            return Err(BenchError::Csv(format!("expected 15 fields, found {}", f.len())));
        }
        let r: Option<u8> = read_opt(&f[6], "r")?;
        Ok(RunReport {
            method: f[0].parse().map_err(|_| BenchError::Csv(format!("bad method `{}`", &f[0])))?,
            family: f[1].to_string(),
            d: read_opt(&f[2], "d")?.ok_or_else(|| BenchError::Csv("missing d".into()))?,
            n: read_opt(&f[3], "N")?,
            samples: read_opt(&f[4], "M")?,
            m: read_opt(&f[5], "m")?,
            r: match r {
                None => None,
                Some(k) => Some(RuleKind::from_number(k).ok_or_else(|| BenchError::Csv(format!("bad r `{k}`")))?),
            },
            value: read_opt(&f[7], "value")?,
            reference: read_opt(&f[8], "ref")?,
            rel_error: read_opt(&f[9], "rel_error")?,
            wall_seconds: read_opt(&f[10], "wall_seconds")?.unwrap_or(0.0),
            peak_monomials: read_opt(&f[11], "peak_monomials")?,
            eval_count: read_opt(&f[12], "eval_count")?,
            seed: read_opt(&f[13], "seed")?,
            status: Status::read(&f[14])?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(format!("unknown format `{s}` (expected csv or markdown)")),
        }
    }
}

fn sci(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.4e}")).unwrap_or_else(|| "-".into())
}

/// Renders reports as CSV (fixed 15-column schema) or a Markdown table.
pub fn emit_table(reports: &[RunReport], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER).unwrap();
            for r in reports {
                w.write_record(r.fields()).unwrap();
            }
            String::from_utf8(w.into_inner().unwrap()).unwrap()
        }
        Format::Markdown => {
            let mut s = String::new();
            s.push_str("| method | family | d | N / M | m | r | value | relative error | CPU time (s) | peak monomials | status |\n");
            s.push_str("|---|---|---:|---:|---:|---:|---:|---:|---:|---:|---|\n");
            for r in reports {
                let nm = r.n.map(|n| n.to_string()).or(r.samples.map(|m| m.to_string())).unwrap_or_default();
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} | {} | {} | {} | {:.6} | {} | {} |",
                    r.method.name(),
                    r.family,
                    r.d,
                    nm,
                    opt(&r.m),
                    opt(&r.r.map(RuleKind::number)),
                    r.value.map(|v| format!("{v:.10e}")).unwrap_or_else(|| "-".into()),
                    sci(r.rel_error),
                    r.wall_seconds,
                    opt(&r.peak_monomials),
                    r.status.render(),
                );
            }
            s
        }
    }
}

/// Parses CSV produced by [`emit_table`].
pub fn parse_csv(text: &str) -> Result<Vec<RunReport>, BenchError> {
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header = rd.headers().map_err(|e| BenchError::Csv(e.to_string()))?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(BenchError::Csv(format!("unexpected header `{}`", header.iter().collect::<Vec<_>>().join(","))));
    }
    rd.records()
        .map(|rec| RunReport::from_fields(&rec.map_err(|e| BenchError::Csv(e.to_string()))?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunReport {
        RunReport {
            method: Method::Mdi,
            family: "gauss".into(),
            d: 10,
            n: Some(11),
            samples: None,
            m: Some(1),
            r: Some(RuleKind::Simpson),
            value: Some(0.1 + 0.2),
            reference: Some(std::f64::consts::PI / 7.0),
            rel_error: Some(7.9046e-6),
            wall_seconds: 0.012345,
            peak_monomials: Some(1),
            eval_count: Some(110),
            seed: None,
            status: Status::Ok,
        }
    }

    #[test]
    fn empty_is_header_only() {
        assert_eq!(emit_table(&[], Format::Csv), format!("{}\n", CSV_HEADER.join(",")));
    }

    #[test]
    fn one_row_has_fifteen_fields() {
        let text = emit_table(&[sample()], Format::Csv);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1].split(',').count(), 15);
        assert!(lines[1].starts_with("mdi,gauss,10,11,,1,2,"));
    }

    #[test]
    fn csv_round_trip() {
        let mut failed = sample();
        failed.method = Method::Stp;
        failed.value = None;
        failed.rel_error = None;
        failed.status = Status::Failed("tensor sum needs 2.144e11 summands, above the cap".into());
        let mut mc = sample();
        mc.method = Method::Mc;
        mc.n = None;
        mc.samples = Some(1_000_000);
        mc.seed = Some(u64::MAX);
        mc.status = Status::Contended;
        let reports = vec![sample(), failed, mc];
        let back = parse_csv(&emit_table(&reports, Format::Csv)).unwrap();
        assert_eq!(back, reports);
    }

    #[test]
    fn markdown_has_a_row_per_report() {
        let md = emit_table(&[sample(), sample()], Format::Markdown);
        assert_eq!(md.lines().count(), 4);
        assert!(md.contains("7.9046e-6"));
    }

    #[test]
    fn rejects_wrong_header() {
        assert!(parse_csv("a,b\n1,2\n").is_err());
    }
}

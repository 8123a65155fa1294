//! Named experiments over rule, measure and space files.
//!
//! A [`Report`] depends only on its inputs: the digest is taken over the
//! canonical re-emission of the parsed files, the parameters and the caps,
//! and nothing time-dependent is recorded.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num::{BigRational, ToPrimitive, Zero};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::blocking::{
    certify_word, classify_equicontinuity, construct_f_periodic_point, search_blocking_words,
    BlockingCertificate, EquicontinuityClass, SearchParams,
};
use crate::ca::{is_surjective, limit_set_approx, LocalRule, SurjectivityMethod};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::format::{emit_measure, emit_rule, emit_space, parse_measure, parse_rule, parse_space};
use crate::measures::{
    cesaro_mean, convergence_diagnostic, mu_c_estimate_at, pushforward_snapshot, support_tests,
    MarkovMeasure, Pushforwards,
};
use crate::symbolic::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Experiment {
    BlockingSearch,
    Classify,
    Surjectivity,
    PeriodicPoints,
    Pushforward,
    Cesaro,
    Formula,
    Support,
    LimitSet,
}

impl Experiment {
    pub const ALL: [Experiment; 9] = [
        Experiment::BlockingSearch,
        Experiment::Classify,
        Experiment::Surjectivity,
        Experiment::PeriodicPoints,
        Experiment::Pushforward,
        Experiment::Cesaro,
        Experiment::Formula,
        Experiment::Support,
        Experiment::LimitSet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::BlockingSearch => "blocking-search",
            Experiment::Classify => "classify",
            Experiment::Surjectivity => "surjectivity",
            Experiment::PeriodicPoints => "periodic-points",
            Experiment::Pushforward => "pushforward",
            Experiment::Cesaro => "cesaro",
            Experiment::Formula => "formula",
            Experiment::Support => "support",
            Experiment::LimitSet => "limit-set",
        }
    }

    fn needs_measure(self) -> bool {
        matches!(
            self,
            Experiment::Pushforward | Experiment::Cesaro | Experiment::Formula | Experiment::Support
        )
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown experiment `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    Csv,
    #[default]
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidParameter(format!("unknown format `{other}`"))),
        }
    }
}

const KNOWN_PARAMS: &[(&str, &str)] = &[
    ("u", "comma-separated words"),
    ("v", "comma-separated words for periodic-points"),
    ("B", "comma-separated blocking words"),
    ("k", "half-width of the central window"),
    ("m", "comma-separated increasing m schedule"),
    ("N", "Cesàro horizon"),
    ("n", "number of steps"),
    ("len", "word length"),
    ("depth", "word length bound"),
    ("seed", "falsifier seed"),
    ("max_len", "longest word searched"),
    ("strip", "initial strip width"),
    ("horizon", "falsifier horizon"),
    ("max_period", "largest accepted F-period"),
    ("window", "diagnostic window"),
    ("tol", "diagnostic tolerance"),
];

/// `key=value` experiment parameters; unknown keys are rejected.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params {
    values: BTreeMap<String, String>,
}

impl Params {
    pub fn parse<S: AsRef<str>>(tokens: &[S]) -> Result<Self> {
        let mut values = BTreeMap::new();
        for token in tokens.iter().flat_map(|t| t.as_ref().split_whitespace()) {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, found `{token}`")))?;
            if !KNOWN_PARAMS.iter().any(|(k, _)| *k == key) {
                let known: Vec<&str> = KNOWN_PARAMS.iter().map(|(k, _)| *k).collect();
                return Err(Error::InvalidParameter(format!(
                    "unknown parameter `{key}` (known: {})",
                    known.join(", ")
                )));
            }
            if values.insert(key.to_string(), value.to_string()).is_some() {
                return Err(Error::InvalidParameter(format!("parameter `{key}` given twice")));
            }
        }
        Ok(Params { values })
    }

    pub fn set(mut self, key: &str, value: impl ToString) -> Result<Self> {
        let token = format!("{key}={}", value.to_string());
        let extra = Params::parse(&[token])?;
        self.values.extend(extra.values);
        Ok(self)
    }

    fn usize(&self, key: &str) -> Result<Option<usize>> {
        self.values
            .get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| Error::InvalidParameter(format!("`{key}={v}` is not a non-negative integer")))
            })
            .transpose()
    }

    fn usize_or(&self, key: &str, default: usize) -> Result<usize> {
        Ok(self.usize(key)?.unwrap_or(default))
    }

    fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        self.values.get(key).map_or(Ok(default), |v| {
            v.parse()
                .map_err(|_| Error::InvalidParameter(format!("`{key}={v}` is not a number")))
        })
    }

    fn list(&self, key: &str) -> Vec<String> {
        self.values.get(key).map_or_else(Vec::new, |v| {
            v.split(',').filter(|s| !s.is_empty()).map(str::to_string).collect()
        })
    }

    fn usize_list(&self, key: &str) -> Result<Option<Vec<usize>>> {
        if !self.values.contains_key(key) {
            return Ok(None);
        }
        self.list(key)
            .iter()
            .map(|v| {
                v.parse()
                    .map_err(|_| Error::InvalidParameter(format!("`{key}` entry `{v}` is not an integer")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    pub fn seed(&self) -> Result<u64> {
        self.values.get("seed").map_or(Ok(0), |v| {
            v.parse()
                .map_err(|_| Error::InvalidParameter(format!("`seed={v}` is not an integer")))
        })
    }

    fn canonical(&self) -> String {
        self.values
            .iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub rule: PathBuf,
    pub measure: Option<PathBuf>,
    pub space: Option<PathBuf>,
    pub params: Params,
    pub caps: Caps,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

/// Parsed inputs of an experiment.
#[derive(Debug, Clone)]
pub struct Inputs {
    /// The rule, already restricted to the space file's domain if given.
    pub rule: LocalRule,
    pub measure: Option<MarkovMeasure>,
}

impl Inputs {
    pub fn load(rule: &Path, measure: Option<&Path>, space: Option<&Path>) -> Result<Self> {
        let mut parsed = parse_rule(rule)?;
        if let Some(path) = space {
            let space = parse_space(path)?;
            if space.alphabet() != parsed.alphabet() {
                return Err(Error::InvalidParameter("rule and space alphabets differ".into()));
            }
            parsed = parsed.with_domain(space)?;
        }
        let measure = measure.map(parse_measure).transpose()?;
        Ok(Inputs { rule: parsed, measure })
    }

    fn digest(&self, experiment: Experiment, params: &Params, caps: &Caps) -> String {
        let mut h = Sha256::new();
        h.update(experiment.name());
        h.update("\n--rule\n");
        h.update(emit_rule(&self.rule));
        h.update("--space\n");
        h.update(emit_space(self.rule.domain()));
        if let Some(mu) = &self.measure {
            h.update("--measure\n");
            h.update(emit_measure(mu));
        }
        h.update("--params\n");
        h.update(params.canonical());
        h.update("--caps\n");
        h.update(serde_json::to_string(caps).expect("caps serialize"));
        hex::encode(h.finalize())
    }

    fn measure(&self) -> Result<&MarkovMeasure> {
        self.measure
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("this experiment needs --measure".into()))
    }

    fn words(&self, texts: &[String]) -> Result<Vec<Word>> {
        texts.iter().map(|t| self.rule.alphabet().parse_word(t)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    HypothesisNotMet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// A certificate as written to JSON reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateRecord {
    #[serde(rename = "B")]
    pub word: String,
    pub d: usize,
    pub w: usize,
    pub strip: usize,
    pub preperiod: usize,
    pub period: usize,
    pub column: Vec<String>,
}

impl CertificateRecord {
    fn new(rule: &LocalRule, c: &BlockingCertificate) -> Self {
        let a = rule.alphabet();
        CertificateRecord {
            word: a.render(&c.word),
            d: c.offset,
            w: c.width,
            strip: c.strip_width,
            preperiod: c.preperiod,
            period: c.period,
            column: c.column.iter().map(|w| a.render(w)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub experiment: String,
    pub inputs_digest: String,
    pub seed: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    /// Human-readable key/value lines; floats appear only here.
    pub summary: Vec<(String, String)>,
    pub tables: Vec<Table>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<CertificateRecord>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::HypothesisNotMet => 2,
        }
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn summary_value(&self, key: &str) -> Option<&str> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One table is written as plain CSV; several are separated by
    /// `# name` lines.
    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::new();
        let single = self.tables.len() == 1;
        for (i, t) in self.tables.iter().enumerate() {
            if !single {
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&format!("# {}\n", t.name));
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&t.columns).map_err(csv_error)?;
            for row in &t.rows {
                w.write_record(row).map_err(csv_error)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(e.to_string()))?;
            out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
        }
        Ok(out)
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => Ok(self.to_json()),
            OutputFormat::Csv => self.to_csv(),
        }
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::InvalidParameter(format!("csv: {e}"))
}

fn num(v: &BigRational) -> String {
    v.numer().to_string()
}

fn den(v: &BigRational) -> String {
    v.denom().to_string()
}

fn float(v: &BigRational) -> String {
    format!("{:.9}", v.to_f64().unwrap_or(f64::NAN))
}

/// Loads the files named in `config` and runs the experiment.
pub fn run(config: &ExperimentConfig) -> Result<Report> {
    if config.experiment.needs_measure() && config.measure.is_none() {
        return Err(Error::InvalidParameter(format!("`{}` needs --measure", config.experiment)));
    }
    let inputs = Inputs::load(&config.rule, config.measure.as_deref(), config.space.as_deref())?;
    run_with(config.experiment, &inputs, &config.params, &config.caps)
}

/// Runs an experiment on already parsed inputs. A failed hypothesis is a
/// report with [`Status::HypothesisNotMet`], not an error.
pub fn run_with(experiment: Experiment, inputs: &Inputs, params: &Params, caps: &Caps) -> Result<Report> {
    let mut report = Report {
        experiment: experiment.name().to_string(),
        inputs_digest: inputs.digest(experiment, params, caps),
        seed: params.seed()?,
        status: Status::Ok,
        message: None,
        summary: Vec::new(),
        tables: Vec::new(),
        certificates: Vec::new(),
    };
    let outcome = match experiment {
        Experiment::BlockingSearch => blocking_search(inputs, params, caps, &mut report),
        Experiment::Classify => classify(inputs, params, caps, &mut report),
        Experiment::Surjectivity => surjectivity(inputs, caps, &mut report),
        Experiment::PeriodicPoints => periodic_points(inputs, params, caps, &mut report),
        Experiment::Pushforward => pushforward(inputs, params, caps, &mut report),
        Experiment::Cesaro => cesaro(inputs, params, caps, &mut report),
        Experiment::Formula => formula(inputs, params, caps, &mut report),
        Experiment::Support => support(inputs, params, caps, &mut report),
        Experiment::LimitSet => limit_set(inputs, params, caps, &mut report),
    };
    match outcome {
        Ok(()) => Ok(report),
        Err(Error::HypothesisNotMet(message)) => {
            report.status = Status::HypothesisNotMet;
            report.message = Some(message);
            report.summary.clear();
            report.tables.clear();
            report.certificates.clear();
            Ok(report)
        }
        Err(e) => Err(e),
    }
}

fn search_params(params: &Params, default_len: usize) -> Result<SearchParams> {
    Ok(SearchParams {
        max_len: params.usize_or("max_len", default_len)?,
        strip_width: params.usize("strip")?,
        horizon: params.usize_or("horizon", SearchParams::default().horizon)?,
        seed: params.seed()?,
    })
}

fn certificate_table(rule: &LocalRule, certs: &[BlockingCertificate], report: &mut Report) {
    let mut t = Table::new(
        "certificates",
        &["word", "offset", "width", "strip_width", "preperiod", "period", "column"],
    );
    for c in certs {
        let r = CertificateRecord::new(rule, c);
        t.push(vec![
            r.word.clone(),
            r.d.to_string(),
            r.w.to_string(),
            r.strip.to_string(),
            r.preperiod.to_string(),
            r.period.to_string(),
            r.column.join(" "),
        ]);
        report.certificates.push(r);
    }
    report.tables.push(t);
}

/// Blocking words from `B=...`, or from a search up to `max_len`.
fn blocking_words(inputs: &Inputs, params: &Params, caps: &Caps) -> Result<Vec<BlockingCertificate>> {
    let sp = search_params(params, 1)?;
    let given = params.list("B");
    if given.is_empty() {
        return search_blocking_words(&inputs.rule, &sp, caps);
    }
    let mut out = Vec::new();
    for w in inputs.words(&given)? {
        match certify_word(&inputs.rule, &w, &sp, caps)? {
            Some(c) => out.push(c),
            None => {
                return Err(Error::HypothesisNotMet(format!(
                    "`{}` could not be certified blocking",
                    inputs.rule.alphabet().render(&w)
                )))
            }
        }
    }
    Ok(out)
}

fn positive_blocking(inputs: &Inputs, params: &Params, caps: &Caps) -> Result<Vec<BlockingCertificate>> {
    let mu = inputs.measure()?;
    let certs = blocking_words(inputs, params, caps)?;
    if certs.iter().all(|c| mu.cylinder_prob(&c.word).is_zero()) {
        return Err(Error::HypothesisNotMet("no positive-measure blocking word".into()));
    }
    Ok(certs)
}

fn blocking_search(inputs: &Inputs, params: &Params, caps: &Caps, report: &mut Report) -> Result<()> {
    let sp = search_params(params, 3)?;
    let certs = search_blocking_words(&inputs.rule, &sp, caps)?;
    report.summary.push(("max_len".into(), sp.max_len.to_string()));
    report.summary.push(("certified".into(), certs.len().to_string()));
    certificate_table(&inputs.rule, &certs, report);
    Ok(())
}

fn classify(inputs: &Inputs, params: &Params, caps: &Caps, report: &mut Report) -> Result<()> {
    let sp = search_params(params, 3)?;
    let v = classify_equicontinuity(&inputs.rule, &sp, caps)?;
    let class = match v.class {
        EquicontinuityClass::E1 => "E1",
        EquicontinuityClass::E2 => "E2",
        EquicontinuityClass::NoBlockingWordFound => "no-blocking-word-found",
    };
    report.summary.push(("class".into(), class.into()));
    if let Some((p, pre)) = v.global {
        report.summary.push(("p".into(), p.to_string()));
        report.summary.push(("p_prime".into(), pre.to_string()));
    }
    report.summary.push(("words_tested".into(), v.report.words_tested.to_string()));
    report.summary.push(("falsified".into(), v.report.falsified.to_string()));
    report.summary.push(("unknown".into(), v.report.unknown.to_string()));
    certificate_table(&inputs.rule, &v.certificates, report);
    Ok(())
}

fn surjectivity(inputs: &Inputs, caps: &Caps, report: &mut Report) -> Result<()> {
    let v = is_surjective(&inputs.rule, caps)?;
    let method = match v.method {
        SurjectivityMethod::Exact => "exact".to_string(),
        SurjectivityMethod::Numerical { max_len } => format!("numerical-{max_len}"),
    };
    let witness = v
        .witness
        .as_ref()
        .map(|w| inputs.rule.alphabet().render(w))
        .unwrap_or_default();
    report.summary.push(("surjective".into(), v.surjective.to_string()));
    let mut t = Table::new("surjectivity", &["surjective", "method", "witness"]);
    t.push(vec![v.surjective.to_string(), method, witness]);
    report.tables.push(t);
    Ok(())
}

fn periodic_points(inputs: &Inputs, params: &Params, caps: &Caps, report: &mut Report) -> Result<()> {
    let rule = &inputs.rule;
    if !is_surjective(rule, caps)?.surjective {
        return Err(Error::HypothesisNotMet("rule is not surjective".into()));
    }
    let certs = blocking_words(inputs, params, caps)?;
    let Some(b) = certs.first() else {
        return Err(Error::HypothesisNotMet("no blocking word found".into()));
    };
    let max_period = params.usize_or("max_period", 256)?;
    let targets: Vec<Word> = if params.values.contains_key("v") {
        inputs.words(&params.list("v"))?
    } else {
        let len = params.usize_or("len", 2)?;
        (0..=len)
            .flat_map(|l| rule.domain().language_words(l))
            .collect()
    };
    let a = rule.alphabet();
    report.summary.push(("blocking_word".into(), a.render(&b.word)));
    let mut t = Table::new("periodic_points", &["v", "generator", "period"]);
    for v in &targets {
        let (x, m) = construct_f_periodic_point(rule, v, b, max_period)?;
        t.push(vec![a.render(v), a.render(&x.generator), m.to_string()]);
    }
    report.summary.push(("points".into(), t.rows.len().to_string()));
    report.tables.push(t);
    Ok(())
}

fn pushforward(inputs: &Inputs, params: &Params, caps: &Caps, report: &mut Report) -> Result<()> {
    let mu = inputs.measure()?;
    let n = params.usize_or("n", 1)?;
    let mut t = Table::new("pushforward", &["n", "u", "value_num", "value_den"]);
    let words = params.list("u");
    if words.is_empty() {
        let depth = params.usize_or("depth", 1)?;
        let snap = pushforward_snapshot(&inputs.rule, mu, n, depth, caps)?;
        for (u, v) in &snap.table {
            t.push(vec![n.to_string(), inputs.rule.alphabet().render(u), num(v), den(v)]);
        }
    } else {
        for (text, u) in words.iter().zip(inputs.words(&words)?) {
            for (step, v) in Pushforwards::new(&inputs.rule, mu, &u, caps)?.take(n + 1).enumerate() {
                let v = v?;
                t.push(vec![step.to_string(), text.clone(), num(&v), den(&v)]);
            }
        }
    }
    report.tables.push(t);
    Ok(())
}

fn required_words(inputs: &Inputs, params: &Params) -> Result<Vec<(String, Word)>> {
    let texts = params.list("u");
    if texts.is_empty() {
        return Err(Error::InvalidParameter("parameter `u` is required".into()));
    }
    Ok(texts.iter().cloned().zip(inputs.words(&texts)?).collect())
}

fn cesaro(inputs: &Inputs, params: &Params, caps: &Caps, report: &mut Report) -> Result<()> {
    let mu = inputs.measure()?;
    let n_max = params.usize_or("N", 64)?;
    let window = params.usize_or("window", 5)?;
    let tol = params.f64_or("tol", 1e-3)?;
    let mut t = Table::new("cesaro", &["n", "u", "value_num", "value_den"]);
    for (text, u) in required_words(inputs, params)? {
        let s = cesaro_mean(&inputs.rule, mu, &u, n_max, caps)?;
        for (i, v) in s.means.iter().enumerate() {
            t.push(vec![(i + 1).to_string(), text.clone(), num(v), den(v)]);
        }
        report.summary.push((format!("mean[{text}]"), float(s.last())));
        report.summary.push((
            format!("raw_diagnostic[{text}]"),
            format!("{:?}", convergence_diagnostic(&s.raw, window, tol)),
        ));
        report.summary.push((
            format!("mean_diagnostic[{text}]"),
            format!("{:?}", convergence_diagnostic(&s.means, window, tol)),
        ));
    }
    report.tables.push(t);
    Ok(())
}

fn formula(inputs: &Inputs, params: &Params, caps: &Caps, report: &mut Report) -> Result<()> {
    let mu = inputs.measure()?;
    let certs = positive_blocking(inputs, params, caps)?;
    let schedule = params.usize_list("m")?.unwrap_or_else(|| vec![1, 2, 3]);
    let n_max = params.usize_or("N", 64)?;
    let k = params.usize("k")?;
    let words: Vec<(String, Word)> = if params.list("u").is_empty() {
        inputs
            .rule
            .alphabet()
            .words(1)
            .map(|w| (inputs.rule.alphabet().render(&w), w))
            .collect()
    } else {
        required_words(inputs, params)?
    };
    let a = inputs.rule.alphabet();
    report.summary.push((
        "blocking_words".into(),
        certs.iter().map(|c| a.render(&c.word)).collect::<Vec<_>>().join(","),
    ));
    let mut t = Table::new(
        "formula",
        &["u", "m", "p", "p_prime", "mass_num", "mass_den", "value_num", "value_den"],
    );
    let mut c = Table::new(
        "comparison",
        &[
            "u", "N", "mean_num", "mean_den", "gap_num", "gap_den", "slack_num", "slack_den", "non_decreasing",
        ],
    );
    for (text, u) in words {
        let k = k.unwrap_or(u.len() / 2);
        let est = mu_c_estimate_at(&inputs.rule, mu, &certs, &u, k, &schedule, n_max, caps)?;
        for pt in &est.points {
            t.push(vec![
                text.clone(),
                pt.m.to_string(),
                pt.p.to_string(),
                pt.p_prime.to_string(),
                num(&pt.mass),
                den(&pt.mass),
                num(&pt.value),
                den(&pt.value),
            ]);
        }
        let mean = est.cesaro.last();
        c.push(vec![
            text.clone(),
            n_max.to_string(),
            num(mean),
            den(mean),
            num(&est.gap),
            den(&est.gap),
            num(&est.slack),
            den(&est.slack),
            est.non_decreasing.to_string(),
        ]);
        let last = est.points.last().expect("schedule is non-empty");
        report.summary.push((format!("W[{text}]"), float(&last.value)));
        report.summary.push((format!("mean[{text}]"), float(mean)));
        report.summary.push((format!("gap[{text}]"), float(&est.gap)));
        report.summary.push((format!("slack[{text}]"), float(&est.slack)));
    }
    report.tables.push(t);
    report.tables.push(c);
    Ok(())
}

fn support(inputs: &Inputs, params: &Params, caps: &Caps, report: &mut Report) -> Result<()> {
    let mu = inputs.measure()?;
    let certs = positive_blocking(inputs, params, caps)?;
    let depth = params.usize_or("depth", 2)?;
    let r = support_tests(&inputs.rule, mu, &certs, depth, caps)?;
    let a = inputs.rule.alphabet();
    let mut t = Table::new(
        "support",
        &["y", "prob_num", "prob_den", "witness_m", "value_num", "value_den"],
    );
    for e in &r.entries {
        let (m, vn, vd) = match &e.witness {
            Some((m, v)) => (m.to_string(), num(v), den(v)),
            None => (String::new(), String::new(), String::new()),
        };
        t.push(vec![a.render(&e.word), num(&e.probability), den(&e.probability), m, vn, vd]);
    }
    report.summary.push(("all_witnessed".into(), r.all_witnessed().to_string()));
    if let Some(c) = &r.comparison {
        report.summary.push((
            "comparison".into(),
            format!(
                "{} vs {} at k={} m={}: {}",
                a.render(&c.first),
                a.render(&c.second),
                c.k,
                c.m,
                if c.agree() { "agree" } else { "differ" }
            ),
        ));
    }
    report.tables.push(t);
    Ok(())
}

fn limit_set(inputs: &Inputs, params: &Params, caps: &Caps, report: &mut Report) -> Result<()> {
    let n = params.usize_or("n", 3)?;
    let len = params.usize_or("len", 4)?;
    let images = limit_set_approx(&inputs.rule, inputs.rule.domain(), n, caps)?;
    let mut t = Table::new("limit_set", &["step", "states", "len", "words"]);
    t.push(vec![
        "0".into(),
        inputs.rule.domain().graph().vertex_count().to_string(),
        len.to_string(),
        inputs.rule.domain().language_words(len).len().to_string(),
    ]);
    for (i, x) in images.iter().enumerate() {
        t.push(vec![
            (i + 1).to_string(),
            x.graph().vertex_count().to_string(),
            len.to_string(),
            x.language_words(len).len().to_string(),
        ]);
    }
    let stable = images.windows(2).last().is_some_and(|w| w[0].same_language_up_to(&w[1], len));
    report.summary.push(("stabilised_up_to_len".into(), stable.to_string()));
    report.tables.push(t);
    Ok(())
}

//! Job specification from flags and `key = value` job files.

use std::path::PathBuf;

use repcorr::cpgraph::Convention;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Task {
    Table,
    Decompose,
    Egraph,
    Dgraph,
    Ktheory,
    Skew,
    Circle,
    Export,
}

impl Task {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        Ok(match s.trim() {
            "table" => Task::Table,
            "decompose" => Task::Decompose,
            "egraph" => Task::Egraph,
            "dgraph" => Task::Dgraph,
            "ktheory" => Task::Ktheory,
            "skew" => Task::Skew,
            "circle" => Task::Circle,
            "export" => Task::Export,
            other => return Err(CliError::Parse(format!("unknown task `{other}`"))),
        })
    }

    pub fn needs_reps(self) -> bool {
        matches!(self, Task::Decompose | Task::Egraph | Task::Dgraph | Task::Ktheory)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Dot,
    Text,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s.trim() {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            "text" => Ok(Format::Text),
            other => Err(CliError::Parse(format!("unknown format `{other}` (json, dot, text)"))),
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Text => "txt",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JobSpec {
    pub group: Option<String>,
    /// Named rep specs in definition order.
    pub reps: Vec<(String, String)>,
    /// Sorted, without duplicates.
    pub tasks: Vec<Task>,
    pub convention: Convention,
    pub seed: u64,
    pub window: Option<i64>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub skew: Option<String>,
    pub circle: Option<String>,
    pub freqs: Option<String>,
}

/// Settings from one source; unset fields defer to the next source.
#[derive(Debug, Clone, Default)]
pub struct Partial {
    pub group: Option<String>,
    pub reps: Vec<String>,
    pub tasks: Option<String>,
    pub convention: Option<String>,
    pub seed: Option<u64>,
    pub window: Option<i64>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub skew: Option<String>,
    pub circle: Option<String>,
    pub freqs: Option<String>,
}

impl Partial {
    /// Parses `key = value` lines; `#` starts a comment, `rep` may repeat.
    pub fn from_job_file(text: &str) -> Result<Self, CliError> {
        let mut p = Partial::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |reason: &str| CliError::Parse(format!("job file line {}: {reason}", i + 1));
            let (key, value) = line.split_once('=').ok_or_else(|| err("expected `key = value`"))?;
            let value = value.trim().to_string();
            match key.trim() {
                "group" => p.group = Some(value),
                "rep" => p.reps.push(value),
                "task" | "tasks" => p.tasks = Some(value),
                "convention" => p.convention = Some(value),
                "seed" => p.seed = Some(value.parse().map_err(|_| err("seed must be a nonnegative integer"))?),
                "window" => p.window = Some(value.parse().map_err(|_| err("window must be an integer"))?),
                "out" => p.out = Some(PathBuf::from(value)),
                "format" => p.format = Some(value),
                "skew" => p.skew = Some(value),
                "circle" => p.circle = Some(value),
                "freqs" => p.freqs = Some(value),
                other => return Err(err(&format!("unknown key `{other}`"))),
            }
        }
        Ok(p)
    }

    /// `self` wins over `base`; reps accumulate, base first.
    pub fn over(self, base: Partial) -> Partial {
        let mut reps = base.reps;
        reps.extend(self.reps);
        Partial {
            group: self.group.or(base.group),
            reps,
            tasks: self.tasks.or(base.tasks),
            convention: self.convention.or(base.convention),
            seed: self.seed.or(base.seed),
            window: self.window.or(base.window),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
            skew: self.skew.or(base.skew),
            circle: self.circle.or(base.circle),
            freqs: self.freqs.or(base.freqs),
        }
    }

    pub fn into_job(self) -> Result<JobSpec, CliError> {
        let tasks_text = self.tasks.ok_or_else(|| CliError::Parse("no tasks given (--task)".into()))?;
        let mut tasks =
            tasks_text.split(',').filter(|t| !t.trim().is_empty()).map(Task::parse).collect::<Result<Vec<_>, _>>()?;
        tasks.sort();
        tasks.dedup();
        if tasks.is_empty() {
            return Err(CliError::Parse("task list is empty".into()));
        }

        let unnamed = self.reps.iter().filter(|r| !has_name(r)).count();
        let mut reps: Vec<(String, String)> = Vec::new();
        let mut k = 0;
        for r in &self.reps {
            let (name, spec) = if has_name(r) {
                let (n, s) = r.split_once('=').expect("checked");
                (n.trim().to_string(), s.trim().to_string())
            } else {
                k += 1;
                let name = if unnamed == 1 { "rho".to_string() } else { format!("rho{k}") };
                (name, r.trim().to_string())
            };
            if reps.iter().any(|(n, _)| *n == name) {
                return Err(CliError::Parse(format!("rep name `{name}` defined twice")));
            }
            reps.push((name, spec));
        }

        if self.group.is_none() && tasks.iter().any(|&t| t == Task::Table || t.needs_reps()) {
            return Err(CliError::Parse("these tasks need --group".into()));
        }
        if reps.is_empty() && tasks.iter().any(|t| t.needs_reps()) {
            return Err(CliError::Parse("these tasks need at least one --rep".into()));
        }
        if tasks.contains(&Task::Skew) && self.skew.is_none() && (self.group.is_none() || reps.is_empty()) {
            return Err(CliError::Parse("skew needs --skew, or --group with --rep over an abelian group".into()));
        }
        if tasks.contains(&Task::Circle) && self.circle.is_none() && self.freqs.is_none() {
            return Err(CliError::Parse("circle needs --circle or --freqs".into()));
        }
        if tasks.contains(&Task::Export) && self.out.is_none() {
            return Err(CliError::Parse("export needs --out".into()));
        }

        let convention = match self.convention {
            Some(c) => Convention::parse(c.trim())
                .ok_or_else(|| CliError::Parse(format!("unknown convention `{c}` (paper-min, module-count)")))?,
            None => Convention::default(),
        };
        let format = self.format.as_deref().map(Format::parse).transpose()?.unwrap_or_default();
        Ok(JobSpec {
            group: self.group,
            reps,
            tasks,
            convention,
            seed: self.seed.unwrap_or(0),
            window: self.window,
            out: self.out,
            format,
            skew: self.skew,
            circle: self.circle,
            freqs: self.freqs,
        })
    }
}

/// `NAME=SPEC` with NAME an identifier.
fn has_name(r: &str) -> bool {
    match r.split_once('=') {
        Some((n, _)) => {
            let n = n.trim();
            n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        }
        None => false,
    }
}

//! Regression corpus: program files plus an expectations table
//! (`expectations.toml`) recording, for each named instance, the verdicts
//! and literal sets the operators must produce.
//!
//! The corpus shipped with the crate is embedded at build time; see
//! [`Corpus::builtin`]. [`Corpus::from_dir`] loads one from disk with the
//! same layout.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arbitration::{arbitrate, Strategy};
use crate::closure::ClosedSet;
use crate::error::{Error, Result};
use crate::merging::{merge, Profile};
use crate::postulates::{check, Instance, PostulateId, Var};
use crate::revision::Limits;
use crate::syntax::Program;
use crate::textio::{parse_closed_set, parse_program, parse_programs};

macro_rules! embed {
    ($($path:literal),* $(,)?) => {
        &[$(($path, include_str!(concat!("../corpus/", $path)))),*]
    };
}

static BUILTIN_FILES: &[(&str, &str)] = embed![
    "expectations.toml",
    "example3/P.fc",
    "example3/Q.fc",
    "sa5/P1.fc",
    "sa5/P2.fc",
    "sa5/Q1.fc",
    "sa5/Q2.fc",
    "sa6/P.fc",
    "sa6/Q1.fc",
    "sa6/Q2.fc",
    "fp3/P.fc",
    "fp3/Q.fc",
    "fp3/Phi1.fc",
    "fp3/Phi2.fc",
    "fp4/P.fc",
    "fp4/P1.fc",
    "fp4/P2.fc",
    "fp4/Phi.fc",
    "fp5/P.fc",
    "fp5/Phi1.fc",
    "fp5/Phi2.fc",
    "fp6/P.fc",
    "fp6/Phi1.fc",
    "fp6/Phi2.fc",
    "fp7/P.fc",
    "fp7/Q.fc",
    "fp7/Phi.fc",
    "fp8/P.fc",
    "fp8/Q.fc",
    "fp8/Phi.fc",
];

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Table {
    #[serde(default)]
    entry: Vec<EntrySpec>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum EntrySpec {
    Postulate {
        name: String,
        postulate: String,
        strategies: Vec<Strategy>,
        status: String,
        bindings: BTreeMap<String, String>,
        #[serde(default)]
        witness: BTreeMap<String, String>,
    },
    Arbitrate {
        name: String,
        a: String,
        b: String,
        expect: BTreeMap<Strategy, String>,
    },
    Revise {
        name: String,
        base: String,
        new: String,
        expect: BTreeMap<Strategy, String>,
    },
    Merge {
        name: String,
        constraint: String,
        profile: Vec<String>,
        expect: BTreeMap<Strategy, String>,
    },
}

#[derive(Clone, Debug)]
enum Check {
    Postulate {
        id: PostulateId,
        instance: Instance,
        status: String,
        witness: Vec<(String, ClosedSet)>,
    },
    Arbitrate(Program, Program, ClosedSet),
    Revise(Program, Program, ClosedSet),
    Merge(Program, Profile, ClosedSet),
}

/// One named instance, evaluated under one strategy.
#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub strategy: Strategy,
    check: Check,
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    entries: Vec<Entry>,
}

/// Expected and observed outcome of one corpus entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryResult {
    pub name: String,
    pub strategy: Strategy,
    pub expected: String,
    pub actual: String,
    pub matched: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub results: Vec<EntryResult>,
}

impl CorpusReport {
    /// True iff every entry matched; an empty report succeeds.
    pub fn success(&self) -> bool {
        self.results.iter().all(|r| r.matched)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &EntryResult> {
        self.results.iter().filter(|r| !r.matched)
    }
}

impl Corpus {
    pub fn builtin() -> Result<Corpus> {
        let files: BTreeMap<&str, &str> = BUILTIN_FILES.iter().copied().collect();
        Corpus::parse(files["expectations.toml"], |path| {
            files
                .get(path)
                .map(|s| s.to_string())
                .ok_or_else(|| Error::Corpus(format!("no embedded file `{path}`")))
        })
    }

    /// Loads `dir/expectations.toml`; program paths are relative to `dir`.
    pub fn from_dir(dir: &Path) -> Result<Corpus> {
        let read = |path: &Path| {
            fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.display().to_string(),
                source,
            })
        };
        let table = read(&dir.join("expectations.toml"))?;
        Corpus::parse(&table, |path| read(&dir.join(path)))
    }

    /// Parses an expectations table, reading program files through `read`.
    pub fn parse(table: &str, read: impl Fn(&str) -> Result<String>) -> Result<Corpus> {
        let table: Table = toml::from_str(table).map_err(|e| Error::Corpus(e.to_string()))?;
        let program = |path: &str| -> Result<Program> {
            parse_program(&read(path)?).map_err(|e| Error::Corpus(format!("{path}:{e}")))
        };
        let profile = |paths: &[String]| -> Result<Profile> {
            let mut members = Vec::new();
            for path in paths {
                members.extend(parse_programs(&read(path)?).map_err(|e| Error::Corpus(format!("{path}:{e}")))?);
            }
            Profile::new(members)
        };
        let set = |s: &str| parse_closed_set(s);

        let mut entries = Vec::new();
        for spec in table.entry {
            match spec {
                EntrySpec::Postulate {
                    name,
                    postulate,
                    strategies,
                    status,
                    bindings,
                    witness,
                } => {
                    let id: PostulateId = postulate.parse()?;
                    if !["holds", "violated", "vacuous"].contains(&status.as_str()) {
                        return Err(Error::Corpus(format!("{name}: unknown status `{status}`")));
                    }
                    let witness = witness
                        .iter()
                        .map(|(label, value)| Ok((label.clone(), set(value)?)))
                        .collect::<Result<Vec<_>>>()?;
                    for strategy in strategies {
                        let mut instance = Instance::new(strategy);
                        for (var, path) in &bindings {
                            let var: Var = var.parse()?;
                            if var.is_profile() {
                                instance.bind_profile(var, profile(std::slice::from_ref(path))?);
                            } else {
                                instance.bind(var, program(path)?);
                            }
                        }
                        entries.push(Entry {
                            name: name.clone(),
                            strategy,
                            check: Check::Postulate {
                                id,
                                instance,
                                status: status.clone(),
                                witness: witness.clone(),
                            },
                        });
                    }
                }
                EntrySpec::Arbitrate { name, a, b, expect } => {
                    for (strategy, value) in expect {
                        entries.push(Entry {
                            name: name.clone(),
                            strategy,
                            check: Check::Arbitrate(program(&a)?, program(&b)?, set(&value)?),
                        });
                    }
                }
                EntrySpec::Revise {
                    name,
                    base,
                    new,
                    expect,
                } => {
                    for (strategy, value) in expect {
                        entries.push(Entry {
                            name: name.clone(),
                            strategy,
                            check: Check::Revise(program(&base)?, program(&new)?, set(&value)?),
                        });
                    }
                }
                EntrySpec::Merge {
                    name,
                    constraint,
                    profile: paths,
                    expect,
                } => {
                    for (strategy, value) in expect {
                        entries.push(Entry {
                            name: name.clone(),
                            strategy,
                            check: Check::Merge(program(&constraint)?, profile(&paths)?, set(&value)?),
                        });
                    }
                }
            }
        }
        Ok(Corpus { entries })
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn run(&self, limits: &Limits) -> CorpusReport {
        CorpusReport {
            results: self.entries.iter().map(|e| e.run(limits)).collect(),
        }
    }
}

impl Entry {
    fn run(&self, limits: &Limits) -> EntryResult {
        let s = self.strategy;
        let (expected, actual) = match &self.check {
            Check::Postulate {
                id,
                instance,
                status,
                witness,
            } => {
                let expected = describe(status, witness.iter().map(|(l, v)| (l.as_str(), v.to_string())));
                let actual = match check(*id, instance, limits) {
                    Ok(verdict) => describe(
                        verdict.status.name(),
                        witness.iter().map(|(label, _)| {
                            let value = verdict
                                .get(label)
                                .map_or_else(|| "<not evaluated>".to_owned(), ClosedSet::to_string);
                            (label.as_str(), value)
                        }),
                    ),
                    Err(e) => format!("error: {e}"),
                };
                (expected, actual)
            }
            Check::Arbitrate(a, b, want) => (want.to_string(), outcome(arbitrate(a, b, s, limits))),
            Check::Revise(p, q, want) => (want.to_string(), outcome(s.revise(p, q, limits))),
            Check::Merge(c, profile, want) => (want.to_string(), outcome(merge(c, profile, s, limits))),
        };
        EntryResult {
            name: self.name.clone(),
            strategy: s,
            matched: expected == actual,
            expected,
            actual,
        }
    }
}

fn outcome(result: Result<ClosedSet>) -> String {
    match result {
        Ok(set) => set.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn describe<'a>(status: &str, witness: impl Iterator<Item = (&'a str, String)>) -> String {
    let mut out = status.to_owned();
    for (label, value) in witness {
        out.push_str(&format!("; {label} = {{{value}}}"));
    }
    out
}

/// Runs the embedded corpus.
pub fn run_corpus(limits: &Limits) -> Result<CorpusReport> {
    Ok(Corpus::builtin()?.run(limits))
}

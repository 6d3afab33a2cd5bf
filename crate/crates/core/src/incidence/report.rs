use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Strongly regular check on a complete graph: no non-edges, so μ is undefined.
    Complete,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        !matches!(self, Verdict::Fail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parameters {
    None,
    NearPolygon {
        diameter: usize,
        order: Option<(usize, usize)>,
    },
    /// `(s, t; t_2, .., t_{d-1})`.
    Regular {
        s: usize,
        t: usize,
        ts: Vec<usize>,
    },
    GeneralizedPolygon {
        order: Option<(usize, usize)>,
        girth: usize,
        diameter: usize,
    },
    Srg {
        v: usize,
        k: usize,
        lambda: Option<usize>,
        mu: Option<usize>,
    },
    IntersectionArray {
        b: Vec<usize>,
        c: Vec<usize>,
    },
    Counts(Vec<(String, usize)>),
}

/// A concrete configuration exhibiting a failure.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Witness {
    pub points: Vec<u32>,
    pub lines: Vec<u32>,
    pub note: String,
}

impl Witness {
    pub fn new(points: Vec<u32>, lines: Vec<u32>, note: impl Into<String>) -> Self {
        Witness {
            points,
            lines,
            note: note.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub check: String,
    pub verdict: Verdict,
    pub parameters: Parameters,
    pub witness: Option<Witness>,
}

impl AxiomReport {
    pub fn pass(check: impl Into<String>, parameters: Parameters) -> Self {
        AxiomReport {
            check: check.into(),
            verdict: Verdict::Pass,
            parameters,
            witness: None,
        }
    }

    pub fn fail(check: impl Into<String>, parameters: Parameters, witness: Witness) -> Self {
        AxiomReport {
            check: check.into(),
            verdict: Verdict::Fail,
            parameters,
            witness: Some(witness),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }

    /// Folds a list of counted facts into one report; fails at the first false entry.
    pub fn from_checks(check: impl Into<String>, checks: Vec<(String, usize, bool)>) -> Self {
        let check = check.into();
        let failed = checks.iter().find(|c| !c.2).map(|c| c.0.clone());
        let params = Parameters::Counts(checks.into_iter().map(|(k, v, _)| (k, v)).collect());
        match failed {
            None => AxiomReport::pass(check, params),
            Some(name) => AxiomReport::fail(check, params, Witness::new(vec![], vec![], name)),
        }
    }
}

impl fmt::Display for Parameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: &Option<usize>| v.map_or("undefined".to_string(), |x| x.to_string());
        match self {
            Parameters::None => Ok(()),
            Parameters::NearPolygon { diameter, order } => {
                write!(f, "diameter={diameter}")?;
                if let Some((s, t)) = order {
                    write!(f, " order=({s},{t})")?;
                }
                Ok(())
            }
            Parameters::Regular { s, t, ts } => {
                let ts: Vec<String> = ts.iter().map(|x| x.to_string()).collect();
                write!(f, "({s},{t};{})", ts.join(","))
            }
            Parameters::GeneralizedPolygon {
                order,
                girth,
                diameter,
            } => {
                write!(f, "incidence girth={girth} diameter={diameter}")?;
                if let Some((s, t)) = order {
                    write!(f, " order=({s},{t})")?;
                }
                Ok(())
            }
            Parameters::Srg { v, k, lambda, mu } => {
                write!(f, "srg({v},{k},{},{})", opt(lambda), opt(mu))
            }
            Parameters::IntersectionArray { b, c } => {
                let join = |xs: &[usize]| {
                    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                };
                write!(f, "{{{};{}}}", join(b), join(c))
            }
            Parameters::Counts(items) => {
                for (i, (k, v)) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{k}={v}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Complete => "COMPLETE",
        };
        write!(f, "[{verdict}] {} {}", self.check, self.parameters)?;
        if let Some(w) = &self.witness {
            write!(f, " witness: {}", w.note)?;
            if !w.points.is_empty() {
                write!(f, " points={:?}", w.points)?;
            }
            if !w.lines.is_empty() {
                write!(f, " lines={:?}", w.lines)?;
            }
        }
        Ok(())
    }
}

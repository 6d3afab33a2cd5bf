//! Stage builders: each stage loads its cache when present and otherwise
//! computes the artifact from the previous stages and caches it.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use nearoct::group::{
    conjugation_orbit, find_central_involution, pair_orbitals, GeneratorSet, InvolutionClass, OrbitalPartition,
};
use nearoct::incidence::{DistanceMatrix, Geometry};
use nearoct::octagon::{
    build_octagon, build_spread_hexagon, enumerate_quads, suborbit_diagram, Octagon, QuadSet, SpreadHexagon,
    SuborbitDiagram,
};
use nearoct::subgeom::{
    enumerate_hj_suboctagons, point_sets_from_text, point_sets_to_text, HjContext, SubKind, Suboctagon,
};
use nearoct::valuations::{enumerate_valuations, Valuation};

use crate::cache::{digest, io_err, Cache, CacheKind};
use crate::manifest::RunManifest;
use crate::CliError;

/// Random words tried when looking for a central involution.
pub const WORD_BUDGET: usize = 10_000;

pub const OCTAGON_FILE: &str = "octagon.txt";
pub const SPREAD_FILE: &str = "spread.txt";
pub const QUADS_FILE: &str = "quads.txt";
pub const HEXAGON_FILE: &str = "hexagon.txt";
pub const SUBOCTAGONS_FILE: &str = "suboctagons.txt";
pub const VALUATIONS_FILE: &str = "valuations.txt";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    pub generators: PathBuf,
    pub seed: u64,
    pub budget: usize,
}

/// Everything up to the spread hexagon.
pub struct Base {
    pub cls: InvolutionClass,
    pub orbitals: OrbitalPartition,
    pub oct: Octagon,
    pub dm: DistanceMatrix,
    pub diagram: SuborbitDiagram,
    pub quads: QuadSet,
    pub hex: SpreadHexagon,
}

impl Base {
    pub fn hj_context(&self) -> HjContext<'_> {
        HjContext {
            oct: &self.oct,
            dm: &self.dm,
            orbitals: &self.orbitals,
            diagram: &self.diagram,
            quads: &self.quads,
        }
    }
}

fn stage_err(stage: &'static str) -> impl FnOnce(String) -> CliError {
    move |message| CliError::Stage { stage, message }
}

pub struct Run<'a> {
    pub settings: &'a Settings,
    pub cache: &'a mut Cache,
    pub manifest: &'a mut RunManifest,
}

impl Run<'_> {
    fn timed<T>(&mut self, stage: &str, f: impl FnOnce(&mut Self) -> Result<T, CliError>) -> Result<T, CliError> {
        let t = Instant::now();
        let out = f(self)?;
        self.manifest.timings.push((stage.to_string(), t.elapsed()));
        Ok(out)
    }

    fn store(&mut self, kind: CacheKind, file: &str, text: &str) -> Result<(), CliError> {
        let entry = self.cache.write(kind, file, text)?;
        self.manifest.caches.push(entry);
        Ok(())
    }

    fn load(&mut self, file: &str) -> Result<Option<String>, CliError> {
        let text = self.cache.read(file)?;
        if text.is_some() {
            if let Some(e) = self.cache.entry(file) {
                self.manifest.caches.push(e.clone());
            }
        }
        Ok(text)
    }

    fn corrupt(&self, file: &str) -> impl Fn(String) -> CliError {
        let path = self.cache.dir().join(file);
        move |_| CliError::CorruptCache(path.clone())
    }

    pub fn generators(&mut self) -> Result<GeneratorSet, CliError> {
        let path = self.settings.generators.clone();
        let bytes = fs::read(&path).map_err(io_err(&path))?;
        self.manifest.generator_digest = digest(&bytes);
        let text = String::from_utf8_lossy(&bytes);
        GeneratorSet::parse(&text, path.display().to_string()).map_err(|e| stage_err("generators")(e.to_string()))
    }

    pub fn base(&mut self) -> Result<Base, CliError> {
        let gens = self.generators()?;
        let seed = self.settings.seed;
        let (cls, orbitals) = self.timed("group", |_| {
            let x = find_central_involution(&gens, WORD_BUDGET, seed).map_err(|e| stage_err("group")(e.to_string()))?;
            let cls = conjugation_orbit(&x, &gens).map_err(|e| stage_err("group")(e.to_string()))?;
            let orbitals = pair_orbitals(&cls);
            Ok((cls, orbitals))
        })?;
        let oct = self.timed("octagon", |run| run.octagon(&cls, &orbitals))?;
        let dm = DistanceMatrix::of(oct.geometry());
        let diagram = suborbit_diagram(&oct, &orbitals, &dm, 0).map_err(|e| stage_err("suborbits")(e.to_string()))?;
        let quads = self.timed("quads", |run| match run.load(QUADS_FILE)? {
            Some(text) => QuadSet::from_text(&oct, &text).map_err(|e| run.corrupt(QUADS_FILE)(e.to_string())),
            None => {
                let q = enumerate_quads(&oct, &dm, &orbitals, &diagram).map_err(|e| stage_err("quads")(e.to_string()))?;
                run.store(CacheKind::Quads, QUADS_FILE, &q.to_text())?;
                Ok(q)
            }
        })?;
        let hex = self.timed("hexagon", |run| match run.load(HEXAGON_FILE)? {
            Some(text) => {
                SpreadHexagon::from_index_text(&oct, &quads, &text).map_err(|e| run.corrupt(HEXAGON_FILE)(e.to_string()))
            }
            None => {
                let h = build_spread_hexagon(&oct, &quads).map_err(|e| stage_err("hexagon")(e.to_string()))?;
                run.store(CacheKind::Hexagon, HEXAGON_FILE, &h.index_to_text())?;
                Ok(h)
            }
        })?;
        Ok(Base {
            cls,
            orbitals,
            oct,
            dm,
            diagram,
            quads,
            hex,
        })
    }

    fn octagon(&mut self, cls: &InvolutionClass, orbitals: &OrbitalPartition) -> Result<Octagon, CliError> {
        if let (Some(geom), Some(spread)) = (self.load(OCTAGON_FILE)?, self.load(SPREAD_FILE)?) {
            let geometry = Geometry::from_text(&geom).map_err(|e| self.corrupt(OCTAGON_FILE)(e.to_string()))?;
            let spread = Octagon::spread_from_text(&spread).map_err(|e| self.corrupt(SPREAD_FILE)(e.to_string()))?;
            if geometry.n_points() != cls.len() {
                return Err(self.corrupt(OCTAGON_FILE)(String::new()));
            }
            return Octagon::from_parts(geometry, &spread).map_err(|e| self.corrupt(SPREAD_FILE)(e.to_string()));
        }
        let (oct, _) = build_octagon(cls, orbitals).map_err(|e| stage_err("octagon")(e.to_string()))?;
        self.store(CacheKind::Octagon, OCTAGON_FILE, &oct.geometry().to_text())?;
        self.store(CacheKind::Octagon, SPREAD_FILE, &oct.spread_to_text())?;
        Ok(oct)
    }

    pub fn suboctagons(&mut self, base: &Base) -> Result<Vec<Suboctagon>, CliError> {
        self.timed("suboctagons", |run| match run.load(SUBOCTAGONS_FILE)? {
            Some(text) => {
                let sets = point_sets_from_text(&text).map_err(|e| run.corrupt(SUBOCTAGONS_FILE)(e.to_string()))?;
                let geom = base.oct.geometry();
                if sets.iter().flatten().any(|&p| p as usize >= geom.n_points()) {
                    return Err(run.corrupt(SUBOCTAGONS_FILE)(String::new()));
                }
                Ok(sets.iter().map(|p| Suboctagon::new(SubKind::HallJanko, geom, p)).collect())
            }
            None => {
                let hjs = enumerate_hj_suboctagons(&base.hj_context())
                    .map_err(|e| stage_err("suboctagons")(e.to_string()))?;
                run.store(CacheKind::Suboctagons, SUBOCTAGONS_FILE, &point_sets_to_text(&hjs))?;
                Ok(hjs)
            }
        })
    }

    /// Valuations of the least Hall-Janko suboctagon, from the cache when present.
    pub fn cached_valuations(&mut self) -> Result<Option<Vec<Valuation>>, CliError> {
        let Some(text) = self.load(VALUATIONS_FILE)? else {
            return Ok(None);
        };
        text.lines()
            .filter(|l| !l.trim().is_empty())
            .map(Valuation::from_line)
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
            .map_err(|e| self.corrupt(VALUATIONS_FILE)(e.to_string()))
    }

    pub fn store_valuations(&mut self, vals: &[Valuation]) -> Result<(), CliError> {
        let text: String = vals.iter().map(|v| v.to_line() + "\n").collect();
        self.store(CacheKind::Valuations, VALUATIONS_FILE, &text)
    }

    pub fn store_graph(&mut self, name: &str, text: &str) -> Result<(), CliError> {
        self.store(CacheKind::Graph, &graph_file(name), text)
    }
}

pub fn graph_file(name: &str) -> String {
    format!("graph-{name}.txt")
}

/// Computes the valuations when the cache had none.
pub fn compute_valuations(host: &Suboctagon) -> Result<Vec<Valuation>, CliError> {
    enumerate_valuations(host.geometry()).map_err(|e| stage_err("valuations")(e.to_string()))
}

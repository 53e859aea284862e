//! Explicit floor diagrams.
//!
//! A diagram records every choice of the floor recursion down to the plane:
//! which constraint each floor meets horizontally, how the lower constraints
//! split between elevators, and which walls each floor meets. Two-floor
//! steps expand their two projected lines into line diagrams of their own,
//! one per line solution, so every diagram stands for `Π lift` distinct
//! tropical curves, where a one-floor step lifts `2^m` ways and every other
//! step lifts uniquely.
//!
//! Enumeration here walks the choice sets directly and never asks the
//! [`Counter`](crate::Counter) for a number, so summing solution counts
//! over diagrams is a second route to every invariant.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conics::{
    enumerate_one_floor_choices, enumerate_two_floor_choices, OneFloorChoice, TwoFloorChoice,
};
use crate::counter::Counter;
use crate::lines::line_floor_projection;
use crate::query::{countable_codims, validate_query, Degree, QueryError};
use crate::scalar::Count;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloorDiagram {
    pub degree: Degree,
    pub level: u32,
    pub codims: Arc<[u32]>,
    pub step: Step,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Step {
    /// Two points (line) or five points (conic) in the plane.
    Base,
    /// The floor of a line meets `floor_at` horizontally.
    Floor {
        floor_at: usize,
        child: Arc<FloorDiagram>,
    },
    OneFloor {
        choice: Arc<OneFloorChoice>,
        child: Arc<FloorDiagram>,
    },
    TwoFloor {
        choice: Arc<TwoFloorChoice>,
        line1: Arc<FloorDiagram>,
        line2: Arc<FloorDiagram>,
    },
}

impl FloorDiagram {
    /// Lift factor of this node alone.
    pub fn lift_factor(&self) -> u64 {
        match &self.step {
            Step::OneFloor { choice, .. } => 1 << choice.hyperplanes,
            _ => 1,
        }
    }

    /// Number of distinct tropical curves the diagram stands for: the product
    /// of lift factors over all nodes.
    pub fn solution_count<T: Count>(&self) -> T {
        let here = T::from_count(self.lift_factor());
        match &self.step {
            Step::Base => here,
            Step::Floor { child, .. } | Step::OneFloor { child, .. } => {
                here * child.solution_count::<T>()
            }
            Step::TwoFloor { line1, line2, .. } => {
                here * line1.solution_count::<T>() * line2.solution_count::<T>()
            }
        }
    }

    /// The canonical text rendering: compact RON, one line.
    pub fn serialize_canonical(&self) -> String {
        ron::to_string(self).expect("diagram serialization cannot fail")
    }

    pub fn parse(text: &str) -> Result<FloorDiagram, ron::error::SpannedError> {
        ron::from_str(text)
    }

    /// Shape of the diagram: the same tree with constraint indices replaced
    /// by codims and position classes.
    pub fn shape(&self) -> Shape {
        let codim = |j: usize| self.codims[j - 1];
        let codims_of = |set: &[usize]| {
            let mut v: Vec<u32> = set.iter().map(|&j| codim(j)).collect();
            v.sort_unstable();
            v
        };
        let pair = |a: &[usize], b: &[usize]| {
            let (a, b) = (codims_of(a), codims_of(b));
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        };
        let above = |k: usize| codims_of(&(k + 1..=self.codims.len()).collect::<Vec<_>>());
        let step = match &self.step {
            Step::Base => ShapeStep::Base,
            Step::Floor { floor_at, child } => ShapeStep::Floor {
                horizontal: codim(*floor_at),
                below: codims_of(&(1..*floor_at).collect::<Vec<_>>()),
                above: above(*floor_at),
                child: Box::new(child.shape()),
            },
            Step::OneFloor { choice, child } => ShapeStep::OneFloor {
                horizontal: codim(choice.floor_at),
                elevators: pair(&choice.elevator_a, &choice.elevator_b),
                above: above(choice.floor_at),
                child: Box::new(child.shape()),
            },
            Step::TwoFloor {
                choice,
                line1,
                line2,
            } => {
                let (between, higher): (Vec<usize>, Vec<usize>) = choice
                    .lower_walls
                    .iter()
                    .partition(|&&j| j < choice.upper_floor_at);
                ShapeStep::TwoFloor {
                    lower_horizontal: codim(choice.lower_floor_at),
                    upper_horizontal: codim(choice.upper_floor_at),
                    elevators: pair(&choice.elevator_a, &choice.elevator_b),
                    bounded_elevator: codims_of(&choice.bounded_elevator),
                    lower_walls_between: codims_of(&between),
                    lower_walls_above: codims_of(&higher),
                    upper_walls: codims_of(&choice.upper_walls),
                    line1: Box::new(line1.shape()),
                    line2: Box::new(line2.shape()),
                }
            }
        };
        Shape {
            degree: self.degree,
            level: self.level,
            step,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Shape {
    pub degree: Degree,
    pub level: u32,
    pub step: ShapeStep,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ShapeStep {
    Base,
    Floor {
        horizontal: u32,
        below: Vec<u32>,
        above: Vec<u32>,
        child: Box<Shape>,
    },
    OneFloor {
        horizontal: u32,
        elevators: (Vec<u32>, Vec<u32>),
        above: Vec<u32>,
        child: Box<Shape>,
    },
    TwoFloor {
        lower_horizontal: u32,
        upper_horizontal: u32,
        elevators: (Vec<u32>, Vec<u32>),
        bounded_elevator: Vec<u32>,
        lower_walls_between: Vec<u32>,
        lower_walls_above: Vec<u32>,
        upper_walls: Vec<u32>,
        line1: Box<Shape>,
        line2: Box<Shape>,
    },
}

/// Diagrams sharing one shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family<T> {
    pub signature: String,
    pub diagram_count: usize,
    pub per_diagram_solutions: T,
}

/// Groups diagrams by shape, in signature order.
pub fn family_breakdown<T: Count>(diagrams: &[Arc<FloorDiagram>]) -> Vec<Family<T>> {
    let mut groups: BTreeMap<String, Family<T>> = BTreeMap::new();
    for diagram in diagrams {
        let signature = ron::to_string(&diagram.shape()).expect("shape serialization cannot fail");
        let solutions = diagram.solution_count::<T>();
        groups
            .entry(signature.clone())
            .and_modify(|f| {
                debug_assert_eq!(
                    f.per_diagram_solutions, solutions,
                    "lifts are fixed by the shape"
                );
                f.diagram_count += 1;
            })
            .or_insert(Family {
                signature,
                diagram_count: 1,
                per_diagram_solutions: solutions,
            });
    }
    groups.into_values().collect()
}

type DiagramList = Arc<Vec<Arc<FloorDiagram>>>;
type DiagramKey = (Degree, u32, Vec<u32>);

/// Builds diagram lists, sharing sub-diagrams between parents.
///
/// Sub-lists are memoized by the ordered codim list (the order is part of a
/// diagram's identity). Expansion runs in parallel; results do not depend on
/// the number of threads.
#[derive(Debug, Default)]
pub struct DiagramEnumerator {
    memo: RwLock<HashMap<DiagramKey, DiagramList>>,
}

impl DiagramEnumerator {
    pub fn new() -> Self {
        Self::default()
    }

    /// All floor diagrams of a query in canonical order (sorted by
    /// serialization). Zero-by-convention queries have none.
    pub fn enumerate(
        &self,
        d: i64,
        n: i64,
        codims: &[i64],
    ) -> Result<Vec<Arc<FloorDiagram>>, QueryError> {
        let mut out = self.enumerate_unsorted(d, n, codims)?;
        out.sort_by_cached_key(|diagram| diagram.serialize_canonical());
        Ok(out)
    }

    /// Same diagrams as [`Self::enumerate`], in construction order. Cheaper
    /// when only the solution total matters.
    pub fn enumerate_unsorted(
        &self,
        d: i64,
        n: i64,
        codims: &[i64],
    ) -> Result<Vec<Arc<FloorDiagram>>, QueryError> {
        let q = validate_query(d, n, codims)?;
        if !q.is_countable() {
            return Ok(Vec::new());
        }
        Ok(self
            .expand(q.degree(), q.ambient_dim(), q.codims())
            .as_ref()
            .clone())
    }

    /// Total number of distinct solutions over all diagrams.
    pub fn distinct_solutions<T: Count>(
        &self,
        d: i64,
        n: i64,
        codims: &[i64],
    ) -> Result<T, QueryError> {
        Ok(self
            .enumerate_unsorted(d, n, codims)?
            .iter()
            .fold(T::zero(), |acc, diagram| {
                acc + diagram.solution_count::<T>()
            }))
    }

    fn expand(&self, degree: Degree, n: u32, codims: &[u32]) -> DiagramList {
        let key = (degree, n, codims.to_vec());
        if let Some(hit) = self.memo.read().expect("diagram memo poisoned").get(&key) {
            return hit.clone();
        }
        let shared: Arc<[u32]> = codims.into();
        let node = |step: Step| {
            Arc::new(FloorDiagram {
                degree,
                level: n,
                codims: shared.clone(),
                step,
            })
        };
        let list: Vec<Arc<FloorDiagram>> = if n == 2 {
            vec![node(Step::Base)]
        } else {
            match degree {
                Degree::Line => (2..=codims.len())
                    .into_par_iter()
                    .map(|k| {
                        let projected = line_floor_projection(codims, k);
                        self.children(Degree::Line, n - 1, &projected)
                            .iter()
                            .map(|child| {
                                node(Step::Floor {
                                    floor_at: k,
                                    child: child.clone(),
                                })
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>()
                    .concat(),
                Degree::Conic => {
                    let one = enumerate_one_floor_choices(n, codims)
                        .into_par_iter()
                        .map(|choice| {
                            let projected = choice.projected_codims(codims);
                            let children = self.children(Degree::Conic, n - 1, &projected);
                            let choice = Arc::new(choice);
                            children
                                .iter()
                                .map(|child| {
                                    node(Step::OneFloor {
                                        choice: choice.clone(),
                                        child: child.clone(),
                                    })
                                })
                                .collect::<Vec<_>>()
                        })
                        .collect::<Vec<_>>();
                    let two = enumerate_two_floor_choices(n, codims)
                        .into_par_iter()
                        .map(|choice| {
                            let lower = self.children(Degree::Line, n - 1, &choice.line1_codims);
                            if lower.is_empty() {
                                return Vec::new();
                            }
                            let upper = self.children(Degree::Line, n - 1, &choice.line2_codims);
                            let choice = Arc::new(choice);
                            let mut out = Vec::with_capacity(lower.len() * upper.len());
                            for line1 in lower.iter() {
                                for line2 in upper.iter() {
                                    out.push(node(Step::TwoFloor {
                                        choice: choice.clone(),
                                        line1: line1.clone(),
                                        line2: line2.clone(),
                                    }));
                                }
                            }
                            out
                        })
                        .collect::<Vec<_>>();
                    one.into_iter().chain(two).flatten().collect()
                }
            }
        };
        let list = Arc::new(list);
        self.memo
            .write()
            .expect("diagram memo poisoned")
            .entry(key)
            .or_insert(list)
            .clone()
    }

    fn children(&self, degree: Degree, n: u32, raw: &[i64]) -> DiagramList {
        match countable_codims(degree, n, raw) {
            Some(codims) => self.expand(degree, n, &codims),
            None => Arc::new(Vec::new()),
        }
    }
}

/// Invariant from the recursion against the number of distinct tropical
/// solutions from the diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalityReport<T> {
    pub invariant: T,
    pub distinct_solutions: T,
    /// Every solution has multiplicity one, so each is real for a suitable
    /// real configuration and the real count is at least this.
    pub real_lower_bound: T,
    pub maximal: bool,
}

pub fn verify_maximality<T: Count>(
    counter: &Counter<T>,
    diagrams: &DiagramEnumerator,
    d: i64,
    n: i64,
    codims: &[i64],
) -> Result<MaximalityReport<T>, QueryError> {
    let invariant = match Degree::from_int(d)? {
        Degree::Line => counter.count_lines(n, codims)?,
        Degree::Conic => counter.count_conics(n, codims)?,
    };
    let distinct_solutions = diagrams.distinct_solutions::<T>(d, n, codims)?;
    Ok(MaximalityReport {
        maximal: invariant == distinct_solutions,
        real_lower_bound: distinct_solutions.clone(),
        invariant,
        distinct_solutions,
    })
}

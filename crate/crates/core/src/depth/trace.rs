//! Replays the lower-bound argument on a concrete configuration, collecting
//! distinct colourful simplices that contain the origin and checking every
//! counting step along the way.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use super::{bound_formulas, DepthEngine, DepthReport, IndexVector, Octahedron, Transversal};
use crate::config::{check_core_conditions, Configuration, CoreMode, CoreViolation};
use crate::geometry::origin_in_simplex;
use crate::systems::{duplicate_component_analysis, DuplicateAnalysis};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("colour {colour} out of range 1..={n}")]
    Colour { colour: usize, n: usize },
    #[error("configuration is not full-core: {0}")]
    NotFullCore(CoreViolation),
    /// A counting step failed. The configuration is attached as a document.
    #[error("trace check failed: {message}\nconfiguration:\n{config}")]
    Violation { message: String, config: String },
}

/// Least-covered antipode of one colour and the transversal picked for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Selection {
    pub colour: usize,
    /// Least-covered point of `colour`, zero-based.
    pub antipode: usize,
    pub j: usize,
    pub transversal: Transversal,
    /// Antipodes of `colour` spanned by `transversal`, zero-based.
    pub spanned: Vec<usize>,
}

impl Selection {
    pub fn l(&self) -> usize {
        self.spanned.len()
    }
}

/// Spanning record of one octahedron `(T_k, T)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OctaRecord {
    pub k: usize,
    pub octahedron: (Transversal, Transversal),
    /// Per antipode of the traced colour: the octahedron's transversals
    /// spanning it.
    pub spanning: Vec<Vec<Transversal>>,
    /// Spans every antipode outside `L`.
    pub covers_missing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmallBranch {
    /// `renumbering[q][new] = old`: new index `d` is the point of `T`.
    pub renumbering: Vec<Vec<usize>>,
    pub octahedra: Vec<OctaRecord>,
    pub b_hat: usize,
    /// `(d+1)(b+l) - 2bl`
    pub octahedra_bound: usize,
    /// `j(d+1)`
    pub coverage_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LargeBranch {
    /// `U_i`, `L_i` and `l_i` for every colour.
    pub selections: Vec<Selection>,
    pub families: Vec<Vec<IndexVector>>,
    pub l_min: usize,
    /// Colour attaining `l_min` used for `M`.
    pub m_colour: usize,
    pub m: Vec<IndexVector>,
    pub duplicates: usize,
    pub components: usize,
    /// `(d+1)(l-1) + c`
    pub families_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "branch", rename_all = "lowercase")]
pub enum TraceBranch {
    Small(SmallBranch),
    Large(LargeBranch),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofTrace {
    pub d: usize,
    /// Colour asked for.
    pub colour: usize,
    /// Colour the argument ran on; differs from `colour` when the asked
    /// colour has a large `l` but another colour does not.
    pub traced_colour: usize,
    pub selection: Selection,
    pub branch: TraceBranch,
    pub collected: Vec<IndexVector>,
    pub guaranteed: usize,
    pub depth: usize,
}

impl ProofTrace {
    pub fn l(&self) -> usize {
        self.selection.l()
    }
}

struct Checker<'c> {
    config: &'c Configuration,
}

impl Checker<'_> {
    fn ensure(&self, ok: bool, message: impl FnOnce() -> String) -> Result<(), TraceError> {
        if ok {
            Ok(())
        } else {
            Err(TraceError::Violation {
                message: message(),
                config: crate::io::to_json(self.config, None),
            })
        }
    }
}

impl DepthEngine<'_> {
    /// Selection of `T` for `colour`: among transversals spanning the
    /// least-covered antipode, the one spanning most antipodes, lowest
    /// choice on ties.
    pub fn select(&self, report: &DepthReport, colour: usize) -> Selection {
        let (antipode, j) = report.least_covered(colour);
        let transversal = self
            .transversals_spanning(colour, antipode)
            .into_iter()
            .min_by_key(|t| {
                (
                    std::cmp::Reverse(self.spanned_apexes(t).count_ones()),
                    t.choice_key(),
                )
            })
            .expect("every antipode of a full-core configuration is spanned");
        let mask = self.spanned_apexes(&transversal);
        Selection {
            colour,
            antipode,
            j,
            spanned: (0..self.n).filter(|&s| mask >> s & 1 == 1).collect(),
            transversal,
        }
    }

    /// Runs the trace for `colour` against a report of this engine.
    pub fn proof_trace(
        &self,
        report: &DepthReport,
        colour: usize,
    ) -> Result<ProofTrace, TraceError> {
        let n = self.n;
        let d = n - 1;
        if colour >= n {
            return Err(TraceError::Colour {
                colour: colour + 1,
                n,
            });
        }
        check_core_conditions(self.config, CoreMode::Full).map_err(TraceError::NotFullCore)?;
        let check = Checker {
            config: self.config,
        };
        let selections: Vec<Selection> = (0..n).map(|q| self.select(report, q)).collect();
        let small = |s: &Selection| 2 * s.l() <= n;
        let traced = if small(&selections[colour]) {
            Some(colour)
        } else {
            (0..n).find(|&q| small(&selections[q]))
        };
        let theorem = bound_formulas(d as u64, 0, 0, 0, 0).theorem as usize;

        let (traced_colour, selection, branch, collected, guaranteed) = match traced {
            Some(c) => {
                let sel = selections[c].clone();
                let (branch, collected, guaranteed) = self.small_branch(&sel, &check)?;
                check.ensure(guaranteed >= theorem, || {
                    format!("small branch guarantees {guaranteed} < {theorem}")
                })?;
                (c, sel, TraceBranch::Small(branch), collected, guaranteed)
            }
            None => {
                let (branch, collected, guaranteed) =
                    self.large_branch(report, selections, &check)?;
                check.ensure(guaranteed >= theorem, || {
                    format!("large branch guarantees {guaranteed} < {theorem}")
                })?;
                let sel = branch.selections[colour].clone();
                (
                    colour,
                    sel,
                    TraceBranch::Large(branch),
                    collected,
                    guaranteed,
                )
            }
        };

        let listed: BTreeSet<&IndexVector> = report.simplices.iter().collect();
        for v in &collected {
            let pts: Vec<_> = (0..n)
                .map(|q| &self.config.point(q, v.get(q)).coords)
                .collect();
            let contains = origin_in_simplex(&pts).unwrap_or(false);
            check.ensure(contains, || {
                format!("collected simplex {v:?} does not contain the origin")
            })?;
            check.ensure(listed.contains(v), || {
                format!("collected simplex {v:?} missing from the report")
            })?;
        }
        check.ensure(collected.len() >= guaranteed, || {
            format!(
                "collected {} simplices, guaranteed {guaranteed}",
                collected.len()
            )
        })?;
        Ok(ProofTrace {
            d,
            colour,
            traced_colour,
            selection,
            branch,
            collected,
            guaranteed,
            depth: report.depth,
        })
    }

    fn small_branch(
        &self,
        sel: &Selection,
        check: &Checker<'_>,
    ) -> Result<(SmallBranch, Vec<IndexVector>, usize), TraceError> {
        let n = self.n;
        let d = n - 1;
        let c = sel.colour;
        let t = &sel.transversal;
        let l = sel.l();

        let renumbering: Vec<Vec<usize>> = (0..n)
            .map(|q| match t.pick(q) {
                None => (0..n).collect(),
                Some(p) => (0..n).filter(|&s| s != p).chain([p]).collect(),
            })
            .collect();
        let t_k = |k: usize| {
            let picks = (0..n).map(|q| renumbering[q][k] as u8).collect();
            Transversal::new(c, picks)
        };

        let mut records = Vec::with_capacity(d);
        let mut seen: BTreeSet<Transversal> = BTreeSet::new();
        let mut octa_set: BTreeSet<IndexVector> =
            sel.spanned.iter().map(|&s| t.with_apex(s)).collect();
        for k in 0..d {
            let first = t_k(k);
            let omega = Octahedron::new(first.clone(), t.clone())
                .expect("renumbered transversals are disjoint");
            let mut spanning = vec![Vec::new(); n];
            for tr in omega.transversals() {
                if tr != *t {
                    check.ensure(seen.insert(tr.clone()), || {
                        format!("transversal ({tr}) appears in two octahedra")
                    })?;
                }
                let mask = self.spanned_apexes(&tr);
                for (s, list) in spanning.iter_mut().enumerate() {
                    if mask >> s & 1 == 1 {
                        list.push(tr.clone());
                        octa_set.insert(tr.with_apex(s));
                    }
                }
            }
            let covers_missing = (0..n)
                .filter(|s| !sel.spanned.contains(s))
                .all(|s| !spanning[s].is_empty());
            if !covers_missing {
                for &s in &sel.spanned {
                    check.ensure(spanning[s].len() >= 2, || {
                        format!(
                            "octahedron {} spans antipode {} only once without covering",
                            k + 1,
                            s + 1
                        )
                    })?;
                }
            }
            records.push(OctaRecord {
                k,
                octahedron: (first, t.clone()),
                spanning,
                covers_missing,
            });
        }
        let b_hat = records.iter().filter(|r| r.covers_missing).count();
        check.ensure(sel.j - 1 + b_hat >= d, || {
            format!("(j-1)+b = {} + {b_hat} < {d}", sel.j - 1)
        })?;
        let table = bound_formulas(d as u64, sel.j as u64, b_hat as u64, l as u64, 0);
        let octahedra_bound = table.octahedra as usize;
        check.ensure(octa_set.len() >= octahedra_bound, || {
            format!(
                "octahedra gave {} simplices, expected {octahedra_bound}",
                octa_set.len()
            )
        })?;

        let mut coverage_set = BTreeSet::new();
        for s in 0..n {
            for tr in self.transversals_spanning(c, s).into_iter().take(sel.j) {
                coverage_set.insert(tr.with_apex(s));
            }
        }
        let coverage_bound = table.coverage as usize;
        check.ensure(coverage_set.len() == coverage_bound, || {
            format!(
                "coverage gave {} simplices, expected {coverage_bound}",
                coverage_set.len()
            )
        })?;

        let collected: Vec<IndexVector> = octa_set.union(&coverage_set).cloned().collect();
        let guaranteed = octahedra_bound.max(coverage_bound);
        Ok((
            SmallBranch {
                renumbering,
                octahedra: records,
                b_hat,
                octahedra_bound,
                coverage_bound,
            },
            collected,
            guaranteed,
        ))
    }

    fn large_branch(
        &self,
        report: &DepthReport,
        selections: Vec<Selection>,
        check: &Checker<'_>,
    ) -> Result<(LargeBranch, Vec<IndexVector>, usize), TraceError> {
        let n = self.n;
        let d = n - 1;
        let families: Vec<Vec<IndexVector>> = selections
            .iter()
            .map(|s| {
                s.spanned
                    .iter()
                    .map(|&a| s.transversal.with_apex(a))
                    .collect()
            })
            .collect();
        let DuplicateAnalysis {
            duplicates,
            components,
        } = duplicate_component_analysis(&families).map_err(|e| TraceError::Violation {
            message: format!("families are malformed: {e}"),
            config: crate::io::to_json(check.config, None),
        })?;
        check.ensure(duplicates + components == n && duplicates <= d, || {
            format!("k = {duplicates}, c = {components} for d = {d}")
        })?;
        let l_min = selections.iter().map(Selection::l).min().unwrap();
        let m_colour = selections.iter().position(|s| s.l() == l_min).unwrap();
        let omitted = (0..n).filter(|s| !selections[m_colour].spanned.contains(s));
        let mut m = Vec::new();
        for s in omitted {
            let first = report.simplices.iter().find(|v| v.get(m_colour) == s);
            check.ensure(first.is_some(), || {
                format!("no simplex uses point {} of colour {}", s + 1, m_colour + 1)
            })?;
            m.push(first.unwrap().clone());
        }
        let union: BTreeSet<IndexVector> = families.iter().flatten().cloned().collect();
        let total: usize = families.iter().map(Vec::len).sum();
        check.ensure(union.len() == total - duplicates, || {
            format!(
                "families hold {} distinct vectors, expected {}",
                union.len(),
                total - duplicates
            )
        })?;
        let table = bound_formulas(d as u64, 0, 0, l_min as u64, components as u64);
        let families_bound = table.families as usize;
        check.ensure(union.len() >= families_bound, || {
            format!("families gave {}, expected {families_bound}", union.len())
        })?;
        let collected: Vec<IndexVector> = union
            .into_iter()
            .chain(m.iter().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let guaranteed = table.families_with_omitted as usize;
        Ok((
            LargeBranch {
                selections,
                families,
                l_min,
                m_colour,
                m,
                duplicates,
                components,
                families_bound,
            },
            collected,
            guaranteed,
        ))
    }
}

/// Replays the argument for `colour` (zero-based).
pub fn proof_trace(config: &Configuration, colour: usize) -> Result<ProofTrace, TraceError> {
    let engine = DepthEngine::new(config);
    let report = engine.enumerate_depth();
    engine.proof_trace(&report, colour)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::tests::rotated_triangles;

    #[test]
    fn trace_on_triangles() {
        let config = rotated_triangles();
        let report = super::super::enumerate_depth(&config);
        for colour in 0..3 {
            let tr = proof_trace(&config, colour).unwrap();
            assert!(tr.collected.len() >= 5);
            assert!(tr.collected.len() <= report.depth);
            assert!(tr.guaranteed >= 5);
        }
        assert!(matches!(
            proof_trace(&config, 3),
            Err(TraceError::Colour { .. })
        ));
    }
}

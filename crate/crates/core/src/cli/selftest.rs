//! Small example table run by `csd --selftest`.

use crate::cli::render::{render_report, Format};
use crate::depth::{bound_formulas, DepthReport, IndexVector};
use crate::exact::{det_sign, Sign};
use crate::geometry::{
    cone_spans, int_point, is_general_position, origin_in_hull_interior, origin_in_simplex,
};
use crate::systems::{
    canonical_form, check_property1, check_property2, duplicate_component_analysis,
    DuplicateAnalysis, VectorSystem,
};

fn pts(list: &[&[i64]]) -> Vec<Vec<crate::exact::Rat>> {
    list.iter().map(|p| int_point(p)).collect()
}

fn sys(d: usize, vs: &[&[usize]]) -> VectorSystem {
    VectorSystem::from_one_based(d, &vs.iter().map(|v| v.to_vec()).collect::<Vec<_>>())
        .expect("valid system")
}

fn iv(e: &[usize]) -> IndexVector {
    IndexVector::from_one_based(e, e.len()).expect("valid vector")
}

/// `(name, passed)` for every example.
pub fn run_selftest() -> Vec<(&'static str, bool)> {
    let id3 = pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    let swapped = pts(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
    let repeated = pts(&[&[1, 2, 3], &[1, 2, 3], &[0, 0, 1]]);
    let e2 = pts(&[&[1, 0], &[0, 1]]);
    let tri = pts(&[&[1, 0], &[-1, 1], &[-1, -1]]);
    let off = pts(&[&[1, 0], &[2, 1], &[1, 1]]);
    let tet = pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]]);
    let report = DepthReport {
        d: 2,
        depth: 5,
        simplices: (0..5).map(|r| IndexVector::from_rank(r, 3, 3)).collect(),
        cov: vec![vec![5, 0, 0]; 3],
    };
    vec![
        ("det_sign identity is +1", det_sign(&id3) == Sign::Positive),
        (
            "det_sign row swap is -1",
            det_sign(&swapped) == Sign::Negative,
        ),
        (
            "det_sign repeated row is 0",
            det_sign(&repeated) == Sign::Zero,
        ),
        (
            "general position of (1,0),(0,1),(1,1)",
            is_general_position(&pts(&[&[1, 0], &[0, 1], &[1, 1]]), 2).is_ok(),
        ),
        (
            "parallel pair (1,0),(2,0) rejected",
            is_general_position(&pts(&[&[1, 0], &[2, 0], &[0, 1]]), 2) == Err(vec![0, 1]),
        ),
        (
            "cone of e1,e2 spans (1,1)",
            cone_spans(&e2, &int_point(&[1, 1])) == Ok(true),
        ),
        (
            "cone of e1,e2 misses (-1,-1)",
            cone_spans(&e2, &int_point(&[-1, -1])) == Ok(false),
        ),
        (
            "orthant cone spans (2,3,5)",
            cone_spans(&id3, &int_point(&[2, 3, 5])) == Ok(true),
        ),
        (
            "triangle around origin",
            origin_in_simplex(&tri) == Ok(true),
        ),
        ("triangle off origin", origin_in_simplex(&off) == Ok(false)),
        (
            "tetrahedron around origin",
            origin_in_simplex(&tet) == Ok(true),
        ),
        (
            "hull of half-plane points misses origin",
            origin_in_hull_interior(&pts(&[&[1, 0], &[2, 1], &[1, 1], &[3, 1]]), 2) == Ok(false),
        ),
        (
            "two points cannot surround origin",
            origin_in_hull_interior(&e2, 2) == Ok(false),
        ),
        (
            "property 1 on the full cube",
            check_property1(&VectorSystem::full(2)).is_ok(),
        ),
        (
            "property 1 fails on {(1,1,1)}",
            check_property1(&sys(2, &[&[1, 1, 1]])).is_err(),
        ),
        (
            "property 1 on the diagonal",
            check_property1(&sys(2, &[&[1, 1, 1], &[2, 2, 2], &[3, 3, 3]])).is_ok(),
        ),
        (
            "property 2 on the empty system",
            check_property2(&VectorSystem::new(2, [])).is_ok(),
        ),
        (
            "disjoint families have k=0, c=3",
            duplicate_component_analysis(&[
                vec![iv(&[1, 1, 1]), iv(&[2, 1, 1])],
                vec![iv(&[1, 3, 3]), iv(&[1, 2, 3])],
                vec![iv(&[3, 3, 1]), iv(&[3, 3, 2])],
            ]) == Ok(DuplicateAnalysis {
                duplicates: 0,
                components: 3,
            }),
        ),
        (
            "value relabelling is canonicalised",
            canonical_form(&sys(2, &[&[2, 2, 2]])) == canonical_form(&sys(2, &[&[1, 1, 1]])),
        ),
        (
            "position swap is canonicalised",
            canonical_form(&sys(2, &[&[1, 2, 3]])) == canonical_form(&sys(2, &[&[3, 2, 1]])),
        ),
        (
            "bounds: d=4 gives 13",
            bound_formulas(4, 0, 0, 0, 0).theorem == 13,
        ),
        (
            "bounds: d=2 gives 5",
            bound_formulas(2, 0, 0, 0, 0).theorem == 5,
        ),
        (
            "bounds: octahedron identity at (4,2,3)",
            bound_formulas(4, 0, 2, 3, 0).octahedra == 13,
        ),
        (
            "csv depth report has header and 5 rows",
            render_report(&report, Format::Csv).lines().count() == 6,
        ),
        (
            "rendering is deterministic",
            render_report(&report, Format::Json) == render_report(&report, Format::Json),
        ),
    ]
}

use serde::Serialize;

/// Earlier lower bounds on the minimum colourful depth, and the upper bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PriorBounds {
    /// `2d`
    pub two_d: u64,
    /// `3d`, only claimed for `d >= 3`.
    pub three_d: Option<u64>,
    /// `ceil(d(d+1)/5)`, only claimed for `d >= 3`.
    pub fifth: Option<u64>,
    /// `floor((d+2)^2/4)`
    pub quarter_square: u64,
    /// `d^2 + 1`, the conjectured exact value.
    pub upper: u64,
}

impl PriorBounds {
    pub fn best_lower(&self) -> u64 {
        [
            Some(self.two_d),
            self.three_d,
            self.fifth,
            Some(self.quarter_square),
        ]
        .into_iter()
        .flatten()
        .max()
        .unwrap()
    }
}

/// Every counting quantity of the lower-bound argument for one set of
/// parameters `(d, j, b, l, c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundTable {
    pub d: u64,
    /// `j(d+1)`: every last-colour antipode spanned at least `j` times.
    pub coverage: u64,
    /// `l + b(d+1-l) + (d-b)l`, collected from the `d` octahedra.
    pub octahedra_sum: i64,
    /// `(d+1)(b+l) - 2bl`, closed form of `octahedra_sum`.
    pub octahedra: i64,
    /// `(d+1)(l-1) + c`, from the axis-aligned families.
    pub families: i64,
    /// `dl + 1`
    pub families_with_omitted: i64,
    /// `ceil((d+1)^2 / 2)`
    pub theorem: u64,
    pub prior: PriorBounds,
}

pub fn bound_formulas(d: u64, j: u64, b: u64, l: u64, c: u64) -> BoundTable {
    assert!(d >= 1, "dimension must be positive");
    let n = d + 1;
    let (di, bi, li, ci) = (d as i64, b as i64, l as i64, c as i64);
    let ni = di + 1;
    BoundTable {
        d,
        coverage: j * n,
        octahedra_sum: li + bi * (ni - li) + (di - bi) * li,
        octahedra: ni * (bi + li) - 2 * bi * li,
        families: ni * (li - 1) + ci,
        families_with_omitted: di * li + 1,
        theorem: (n * n).div_ceil(2),
        prior: PriorBounds {
            two_d: 2 * d,
            three_d: (d >= 3).then_some(3 * d),
            fifth: (d >= 3).then(|| (d * (d + 1)).div_ceil(5)),
            quarter_square: (d + 2) * (d + 2) / 4,
            upper: d * d + 1,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn improves_d4_from_12_to_13() {
        let t = bound_formulas(4, 0, 0, 0, 0);
        assert_eq!(t.theorem, 13);
        assert_eq!(t.prior.two_d, 8);
        assert_eq!(t.prior.three_d, Some(12));
        assert_eq!(t.prior.fifth, Some(4));
        assert_eq!(t.prior.quarter_square, 9);
        assert_eq!(t.prior.best_lower(), 12);
        assert_eq!(t.prior.upper, 17);
    }

    #[test]
    fn tight_in_the_plane() {
        let t = bound_formulas(2, 0, 0, 0, 0);
        assert_eq!(t.theorem, 5);
        assert_eq!(t.prior.best_lower(), 4);
        assert_eq!(t.prior.upper, 5);
    }

    #[test]
    fn octahedron_identity_instance() {
        let t = bound_formulas(4, 1, 2, 3, 1);
        assert_eq!(t.octahedra_sum, 3 + 4 + 6);
        assert_eq!(t.octahedra, 25 - 12);
        assert_eq!(t.octahedra_sum, 13);
    }

    #[test]
    fn identity_holds_everywhere() {
        for d in 1..12 {
            for b in 0..=d {
                for l in 0..=d + 1 {
                    let t = bound_formulas(d, 1, b, l, 1);
                    assert_eq!(t.octahedra_sum, t.octahedra);
                }
            }
        }
    }

    #[test]
    fn families_with_omitted_dominated_when_components_large() {
        // (d+1)(l-1)+c >= dl+1 exactly when c - 1 >= d + 1 - l
        for d in 1..10i64 {
            for l in 1..=d + 1 {
                for c in 1..=d + 1 {
                    let t = bound_formulas(d as u64, 1, 0, l as u64, c as u64);
                    if c - 1 >= d + 1 - l {
                        assert!(t.families >= t.families_with_omitted);
                    } else {
                        assert_eq!(t.families + (d + 2 - l - c), t.families_with_omitted);
                    }
                }
            }
        }
    }
}

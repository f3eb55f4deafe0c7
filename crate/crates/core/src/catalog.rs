//! Named permutation groups and the constructions behind them.
//!
//! Matrix groups are turned into permutation groups by acting on the orbit
//! of the row vector `(1, 0)` under right multiplication.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::path::PathBuf;

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::textfmt::load_group_file;

fn cycle_perm(degree: usize, cycles: &[Vec<usize>]) -> Permutation {
    Permutation::from_cycles(degree, cycles).expect("constructor cycles are well formed")
}

fn build(degree: usize, gens: Vec<Permutation>) -> PermGroup {
    PermGroup::new(degree, gens).expect("constructor generators share the degree")
}

/// `S_n` on `n` points.
pub fn symmetric(n: usize) -> PermGroup {
    let n = n.max(1);
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle_perm(n, &[vec![0, 1]]));
        gens.push(cycle_perm(n, &[(0..n).collect()]));
    }
    build(n, gens)
}

/// `A_n` on `n` points, generated by the 3-cycles `(1 2 i)`.
pub fn alternating(n: usize) -> PermGroup {
    let n = n.max(1);
    let gens = (2..n).map(|i| cycle_perm(n, &[vec![0, 1, i]])).collect();
    build(n, gens)
}

/// The cyclic group of order `n`, acting regularly.
pub fn cyclic(n: usize) -> PermGroup {
    let n = n.max(1);
    let gens = if n >= 2 {
        vec![cycle_perm(n, &[(0..n).collect()])]
    } else {
        vec![]
    };
    build(n, gens)
}

/// The dihedral group of order `order` acting on `order / 2` points.
pub fn dihedral(order: usize) -> PermGroup {
    let n = (order / 2).max(1);
    if n <= 2 {
        // D_2 = C_2 and D_4 = C_2 x C_2 need the regular picture.
        return if n == 1 {
            cyclic(2)
        } else {
            direct_product(&[cyclic(2), cyclic(2)])
        };
    }
    let rotation = cycle_perm(n, &[(0..n).collect()]);
    let reflection =
        Permutation::from_images((0..n).map(|i| ((n - i) % n) as u32).collect()).unwrap();
    build(n, vec![rotation, reflection])
}

/// The quaternion group `Q_8` in its regular representation.
pub fn quaternion8() -> PermGroup {
    // Units 1, i, j, k as 0..4; an element is (sign, unit) encoded as 4*sign + unit.
    fn unit_mul(a: usize, b: usize) -> (usize, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (0, x),
            (x, y) if x == y => (1, 0),
            (1, 2) => (0, 3),
            (2, 3) => (0, 1),
            (3, 1) => (0, 2),
            (2, 1) => (1, 3),
            (3, 2) => (1, 1),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    }
    let right_mul = |u: usize| {
        let images = (0..8)
            .map(|x| {
                let (s, v) = unit_mul(x % 4, u);
                (((x / 4) ^ s) * 4 + v) as u32
            })
            .collect();
        Permutation::from_images(images).unwrap()
    };
    build(8, vec![right_mul(1), right_mul(2)])
}

/// The internal direct product on the disjoint union of the factors' points.
pub fn direct_product(factors: &[PermGroup]) -> PermGroup {
    let degree: usize = factors.iter().map(PermGroup::degree).sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for f in factors {
        for g in f.generators() {
            let images = (0..degree)
                .map(|i| {
                    if i >= offset && i < offset + f.degree() {
                        (g.image(i - offset) + offset) as u32
                    } else {
                        i as u32
                    }
                })
                .collect();
            gens.push(Permutation::from_images(images).unwrap());
        }
        offset += f.degree();
    }
    build(degree.max(1), gens)
}

/// The normal Klein four-group of `S_4`.
pub fn klein_four_in_s4() -> PermGroup {
    build(
        4,
        vec![
            cycle_perm(4, &[vec![0, 1], vec![2, 3]]),
            cycle_perm(4, &[vec![0, 2], vec![1, 3]]),
        ],
    )
}

/// `F_p`, or `F_{p^2} = F_p[t] / (t^2 - w)` for a non-square `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmallField {
    pub p: u32,
    pub nonsquare: Option<u32>,
}

/// `a + b t`; `b` is always zero over a prime field.
pub type FieldElem = (u32, u32);
pub type Mat2 = [[FieldElem; 2]; 2];

impl SmallField {
    pub fn prime(p: u32) -> Self {
        SmallField { p, nonsquare: None }
    }

    pub fn quadratic(p: u32, nonsquare: u32) -> Self {
        SmallField {
            p,
            nonsquare: Some(nonsquare),
        }
    }

    pub fn order(&self) -> u32 {
        match self.nonsquare {
            None => self.p,
            Some(_) => self.p * self.p,
        }
    }

    pub fn add(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        ((x.0 + y.0) % self.p, (x.1 + y.1) % self.p)
    }

    pub fn mul(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        let p = self.p as u64;
        let w = self.nonsquare.unwrap_or(0) as u64;
        let (a, b, c, d) = (x.0 as u64, x.1 as u64, y.0 as u64, y.1 as u64);
        (
            ((a * c + b * d % p * w) % p) as u32,
            ((a * d + b * c) % p) as u32,
        )
    }

    pub fn det(&self, m: &Mat2) -> FieldElem {
        let ad = self.mul(m[0][0], m[1][1]);
        let bc = self.mul(m[0][1], m[1][0]);
        self.add(ad, self.mul(bc, (self.p - 1, 0)))
    }

    /// `v A` for a row vector `v`.
    fn apply(&self, v: [FieldElem; 2], m: &Mat2) -> [FieldElem; 2] {
        [
            self.add(self.mul(v[0], m[0][0]), self.mul(v[1], m[1][0])),
            self.add(self.mul(v[0], m[0][1]), self.mul(v[1], m[1][1])),
        ]
    }
}

/// Permutation action of `<gens>` on the orbit of `(1, 0)`.
pub fn matrix_action(field: SmallField, gens: &[Mat2]) -> Result<PermGroup> {
    let start = [(1, 0), (0, 0)];
    let mut index = HashMap::new();
    index.insert(start, 0usize);
    let mut orbit = vec![start];
    let mut k = 0;
    while k < orbit.len() {
        for m in gens {
            let w = field.apply(orbit[k], m);
            if let Entry::Vacant(e) = index.entry(w) {
                e.insert(orbit.len());
                orbit.push(w);
            }
        }
        k += 1;
    }
    let perms = gens
        .iter()
        .map(|m| {
            let images = orbit
                .iter()
                .map(|&v| index[&field.apply(v, m)] as u32)
                .collect();
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(orbit.len(), perms)
}

fn scalar(x: u32) -> FieldElem {
    (x, 0)
}

fn prime_mat(p: u32, rows: [[i64; 2]; 2]) -> Mat2 {
    let r = |x: i64| scalar(x.rem_euclid(p as i64) as u32);
    [
        [r(rows[0][0]), r(rows[0][1])],
        [r(rows[1][0]), r(rows[1][1])],
    ]
}

/// Generators of `SL(2, p)`.
pub fn sl2_generators(p: u32) -> Vec<Mat2> {
    vec![
        prime_mat(p, [[1, 1], [0, 1]]),
        prime_mat(p, [[0, 1], [-1, 0]]),
    ]
}

/// Generators of `GL(2, p)`: those of `SL(2, p)` plus `diag(ω, 1)` for a
/// primitive root `ω`.
pub fn gl2_generators(p: u32) -> Vec<Mat2> {
    let omega = (2..p)
        .find(|&w| (1..p - 1).all(|k| pow_mod(w, k, p) != 1))
        .unwrap_or(1);
    let mut gens = sl2_generators(p);
    gens.push(prime_mat(p, [[omega as i64, 0], [0, 1]]));
    gens
}

fn pow_mod(b: u32, e: u32, m: u32) -> u32 {
    (0..e).fold(1u64, |acc, _| acc * b as u64 % m as u64) as u32
}

/// The double cover of `S_5` in which `2.A_5 = SL(2, 5)`.
///
/// Realized inside `SL(2, 25)` with `F_25 = F_5[t]/(t^2 - 2)`: the element
/// `μ · diag(2, 1)` with `μ = 2t` (so `μ^2 = 3`) has determinant 1, induces
/// the outer automorphism of `SL(2, 5)`, and squares into `SL(2, 5)`.
pub fn schur_cover_s5_generators() -> (SmallField, Vec<Mat2>) {
    let field = SmallField::quadratic(5, 2);
    let mut gens = sl2_generators(5);
    let mu = (0, 2);
    gens.push([[field.mul(mu, (2, 0)), (0, 0)], [(0, 0), mu]]);
    (field, gens)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Construction {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    /// Dihedral group of the given order.
    Dihedral(usize),
    Quaternion8,
    DirectProduct(Vec<Construction>),
    MatrixAction {
        field: SmallField,
        generators: Vec<Mat2>,
    },
    File(PathBuf),
}

impl Construction {
    pub fn build(&self) -> Result<PermGroup> {
        Ok(match self {
            Construction::Symmetric(n) => symmetric(*n),
            Construction::Alternating(n) => alternating(*n),
            Construction::Cyclic(n) => cyclic(*n),
            Construction::Dihedral(n) => dihedral(*n),
            Construction::Quaternion8 => quaternion8(),
            Construction::DirectProduct(parts) => {
                let groups = parts
                    .iter()
                    .map(Construction::build)
                    .collect::<Result<Vec<_>>>()?;
                direct_product(&groups)
            }
            Construction::MatrixAction { field, generators } => matrix_action(*field, generators)?,
            Construction::File(path) => load_group_file(path)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub construction: Construction,
    pub expected_order: u64,
    pub description: &'static str,
}

/// Catalog names in listing order.
pub const CATALOG_NAMES: &[&str] = &[
    "C2", "C3", "C6", "C15", "S3", "S4", "S5", "A4", "A5", "D8", "Q8", "SL(2,3)", "GL(2,3)",
    "SL(2,5)", "2.S5", "A5xC2", "A5xA5", "A5xS4",
];

pub fn catalog_entry(name: &str) -> Result<CatalogEntry> {
    use Construction::*;
    let (name, construction, expected_order, description) = match name {
        "C2" => ("C2", Cyclic(2), 2, "cyclic group of order 2"),
        "C3" => ("C3", Cyclic(3), 3, "cyclic group of order 3"),
        "C6" => ("C6", Cyclic(6), 6, "cyclic group of order 6"),
        "C15" => ("C15", Cyclic(15), 15, "cyclic group of order 15"),
        "S3" => ("S3", Symmetric(3), 6, "symmetric group on 3 points"),
        "S4" => ("S4", Symmetric(4), 24, "symmetric group on 4 points"),
        "S5" => ("S5", Symmetric(5), 120, "symmetric group on 5 points"),
        "A4" => ("A4", Alternating(4), 12, "alternating group on 4 points"),
        "A5" => ("A5", Alternating(5), 60, "alternating group on 5 points"),
        "D8" => ("D8", Dihedral(8), 8, "dihedral group of order 8"),
        "Q8" => ("Q8", Quaternion8, 8, "quaternion group, regular action"),
        "SL(2,3)" => (
            "SL(2,3)",
            MatrixAction {
                field: SmallField::prime(3),
                generators: sl2_generators(3),
            },
            24,
            "SL(2,3) on the 8 nonzero vectors of F_3^2",
        ),
        "GL(2,3)" => (
            "GL(2,3)",
            MatrixAction {
                field: SmallField::prime(3),
                generators: gl2_generators(3),
            },
            48,
            "GL(2,3) on the 8 nonzero vectors of F_3^2",
        ),
        "SL(2,5)" => (
            "SL(2,5)",
            MatrixAction {
                field: SmallField::prime(5),
                generators: sl2_generators(5),
            },
            120,
            "SL(2,5) on the 24 nonzero vectors of F_5^2",
        ),
        "2.S5" => {
            let (field, generators) = schur_cover_s5_generators();
            (
                "2.S5",
                MatrixAction { field, generators },
                240,
                "Schur cover of S5 extending SL(2,5) inside SL(2,25), on a 48-point vector orbit",
            )
        }
        "A5xC2" => (
            "A5xC2",
            DirectProduct(vec![Alternating(5), Cyclic(2)]),
            120,
            "A5 x C2 on 5 + 2 points",
        ),
        "A5xA5" => (
            "A5xA5",
            DirectProduct(vec![Alternating(5), Alternating(5)]),
            3600,
            "A5 x A5 on 5 + 5 points",
        ),
        "A5xS4" => (
            "A5xS4",
            DirectProduct(vec![Alternating(5), Symmetric(4)]),
            1440,
            "A5 x S4 on 5 + 4 points",
        ),
        other => {
            return Err(GroupError::input(format!(
                "unknown group {other:?}; catalog: {}",
                CATALOG_NAMES.join(", ")
            )))
        }
    };
    Ok(CatalogEntry {
        name,
        construction,
        expected_order,
        description,
    })
}

pub fn catalog_get(name: &str) -> Result<PermGroup> {
    let entry = catalog_entry(name)?;
    let g = entry.construction.build()?;
    if g.order_u64() != Some(entry.expected_order) {
        return Err(GroupError::Internal(format!(
            "catalog group {name} has order {}, expected {}",
            g.order(),
            entry.expected_order
        )));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime::Prime;
    use crate::subgroup::{derived_subgroup, intersection};
    use crate::sylow::{min_generators_p_group, sylow_subgroup};

    #[test]
    fn every_entry_has_its_expected_order() {
        for name in CATALOG_NAMES {
            let entry = catalog_entry(name).unwrap();
            let g = catalog_get(name).unwrap();
            assert_eq!(g.order_u64(), Some(entry.expected_order), "{name}");
        }
    }

    #[test]
    fn documented_degrees() {
        assert_eq!(catalog_get("S4").unwrap().degree(), 4);
        assert_eq!(catalog_get("SL(2,3)").unwrap().degree(), 8);
        assert_eq!(catalog_get("SL(2,5)").unwrap().degree(), 24);
        assert_eq!(catalog_get("2.S5").unwrap().degree(), 48);
    }

    #[test]
    fn unknown_name_lists_catalog() {
        let err = catalog_get("M11").unwrap_err();
        match err {
            GroupError::Input(msg) => assert!(msg.contains("2.S5")),
            other => panic!("unexpected {other:?}"),
        }
    }

    fn center(g: &PermGroup) -> Vec<Permutation> {
        g.elements()
            .unwrap()
            .into_iter()
            .filter(|x| g.generators().iter().all(|s| x.compose(s) == s.compose(x)))
            .collect()
    }

    #[test]
    fn schur_cover_structure() {
        let g = catalog_get("2.S5").unwrap();
        let z = center(&g);
        assert_eq!(z.len(), 2);
        let zg = PermGroup::new(g.degree(), z).unwrap();
        let q = g.quotient(&zg).unwrap();
        let s5 = q.group();
        assert_eq!(s5.order_u64(), Some(120));
        // S5, not A5 x C2: trivial center and a perfect derived subgroup of order 60.
        assert_eq!(center(s5).len(), 1);
        let d = derived_subgroup(s5);
        assert_eq!(d.order_u64(), Some(60));
        assert!(derived_subgroup(&d).same_as(&d));
        // Stem extension: the center lies in the derived subgroup, which is SL(2,5).
        let dg = derived_subgroup(&g);
        assert_eq!(dg.order_u64(), Some(120));
        assert!(zg.is_subgroup_of(&dg));
        let p = sylow_subgroup(&g, Prime::new(2).unwrap()).unwrap();
        assert_eq!(p.order_u64(), Some(16));
        assert_eq!(
            min_generators_p_group(&p, Prime::new(2).unwrap()).unwrap(),
            2
        );
        // Only one involution: the transpositions of S5 lift to elements of order 4.
        let involutions = g
            .elements()
            .unwrap()
            .into_iter()
            .filter(|x| !x.is_identity() && x.pow(2).is_identity())
            .count();
        assert_eq!(involutions, 1);
        assert!(intersection(&p, &zg).unwrap().same_as(&zg));
    }

    #[test]
    fn determinant_plus_minus_one_subgroup_is_not_a_cover() {
        // {A in GL(2,5) : det A = ±1} has a center of order 4 (2 = sqrt(-1) in F_5).
        let field = SmallField::prime(5);
        let mut gens = sl2_generators(5);
        gens.push(prime_mat(5, [[-1, 0], [0, 1]]));
        let g = matrix_action(field, &gens).unwrap();
        assert_eq!(g.order_u64(), Some(240));
        assert_eq!(center(&g).len(), 4);
    }

    #[test]
    fn matrix_conversion_preserves_determinants() {
        let field = SmallField::prime(3);
        for m in gl2_generators(3) {
            assert_ne!(field.det(&m), (0, 0));
        }
        let (f25, gens) = schur_cover_s5_generators();
        for m in &gens {
            assert_eq!(f25.det(m), (1, 0));
        }
        assert_eq!(f25.order(), 25);
    }

    #[test]
    fn small_constructors() {
        assert_eq!(symmetric(1).order_u64(), Some(1));
        assert_eq!(cyclic(1).order_u64(), Some(1));
        assert_eq!(dihedral(4).order_u64(), Some(4));
        assert_eq!(dihedral(10).order_u64(), Some(10));
        assert_eq!(quaternion8().order_u64(), Some(8));
        let q8 = quaternion8();
        let involutions = q8
            .elements()
            .unwrap()
            .into_iter()
            .filter(|x| !x.is_identity() && x.pow(2).is_identity())
            .count();
        assert_eq!(involutions, 1);
    }
}

//! Simplicial complexes and their combinatorial Hodge theory.
//!
//! Simplices are sorted vertex lists; the boundary of `[v_0, …, v_k]` is
//! `Σ_j (-1)^j [v_0, …, v̂_j, …, v_k]`. Every rank is exact over the
//! rationals.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linalg::{rank_integer, Matrix, SymMatrix};

pub type Simplex = Vec<usize>;

/// A finite face-closed simplicial complex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    /// `simplices[k]` holds the `k`-simplices in lexicographic order.
    simplices: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    /// Face closure of the given maximal simplices.
    pub fn from_maximal(maximal: &[Vec<i64>]) -> Result<Self> {
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        for raw in maximal {
            if let Some(v) = raw.iter().find(|&&v| v < 0) {
                return Err(Error::InvalidComplex(format!("negative vertex id {v}")));
            }
            let mut simplex: Simplex = raw.iter().map(|&v| v as usize).collect();
            simplex.sort_unstable();
            if simplex.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!("duplicate vertex in simplex {raw:?}")));
            }
            if simplex.is_empty() {
                continue;
            }
            if simplex.len() > 24 {
                return Err(Error::InvalidComplex(format!(
                    "simplex with {} vertices is too large to close under faces",
                    simplex.len()
                )));
            }
            if by_dim.len() < simplex.len() {
                by_dim.resize_with(simplex.len(), BTreeSet::new);
            }
            // every nonempty subset, by bitmask
            for mask in 1u32..(1 << simplex.len()) {
                let face: Simplex =
                    simplex.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &v)| v).collect();
                by_dim[face.len() - 1].insert(face);
            }
        }
        Ok(Self { simplices: by_dim.into_iter().map(|s| s.into_iter().collect()).collect() })
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn max_dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn vertex_count(&self) -> usize {
        self.count(0)
    }

    /// `∂_k : C_k → C_{k-1}` as a `count(k-1) × count(k)` matrix; `∂_0` is
    /// the zero map to the trivial space.
    pub fn boundary(&self, k: usize) -> BoundaryMatrix {
        let cols = self.simplices(k);
        if k == 0 {
            return BoundaryMatrix { k, matrix: Matrix::zeros(0, cols.len()) };
        }
        let rows = self.simplices(k - 1);
        let index: BTreeMap<&[usize], usize> = rows.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let mut matrix = Matrix::zeros(rows.len(), cols.len());
        for (c, simplex) in cols.iter().enumerate() {
            for j in 0..simplex.len() {
                let mut face = simplex.clone();
                face.remove(j);
                let r = index[face.as_slice()];
                matrix[(r, c)] = BigInt::from(if j % 2 == 0 { 1 } else { -1 });
            }
        }
        BoundaryMatrix { k, matrix }
    }
}

/// Integer boundary matrix of one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub k: usize,
    pub matrix: Matrix<BigInt>,
}

impl BoundaryMatrix {
    pub fn rank(&self) -> usize {
        rank_integer(&self.matrix)
    }

    fn rational(&self) -> Matrix<BigRational> {
        self.matrix.map(|x| BigRational::from_integer(x.clone()))
    }
}

/// Parses a complex from its maximal simplices.
pub fn load_complex(maximal: &[Vec<i64>]) -> Result<SimplicialComplex> {
    SimplicialComplex::from_maximal(maximal)
}

/// `β_k = dim C_k − rank ∂_k − rank ∂_{k+1}` for `k = 0..=max_dim`.
pub fn betti_numbers(complex: &SimplicialComplex) -> Vec<u64> {
    let Some(top) = complex.max_dim() else {
        return Vec::new();
    };
    let ranks: Vec<usize> = (0..=top + 1).map(|k| complex.boundary(k).rank()).collect();
    (0..=top).map(|k| (complex.count(k) - ranks[k] - ranks[k + 1]) as u64).collect()
}

/// `L_k = ∂_{k+1} ∂_{k+1}ᵀ + ∂_kᵀ ∂_k`.
pub fn hodge_laplacian(complex: &SimplicialComplex, k: usize) -> Result<SymMatrix> {
    check_degree(complex, k)?;
    let down = complex.boundary(k).rational();
    let up = complex.boundary(k + 1).rational();
    let up_part = up.mul(&up.transpose())?;
    let down_part = down.transpose().mul(&down)?;
    SymMatrix::new(up_part.add(&down_part)?)
}

fn check_degree(complex: &SimplicialComplex, k: usize) -> Result<()> {
    match complex.max_dim() {
        Some(top) if k <= top => Ok(()),
        _ => Err(Error::InvalidParameter(format!("degree {k} exceeds the complex dimension"))),
    }
}

/// Dimensions of the harmonic, exact and coexact summands of `C_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HodgeDims {
    pub harmonic: usize,
    pub exact: usize,
    pub coexact: usize,
}

impl HodgeDims {
    pub fn total(&self) -> usize {
        self.harmonic + self.exact + self.coexact
    }
}

/// `harmonic = dim ker L_k`, `exact = rank ∂_k`, `coexact = rank ∂_{k+1}`.
pub fn hodge_decomposition_dims(complex: &SimplicialComplex, k: usize) -> Result<HodgeDims> {
    let laplacian = hodge_laplacian(complex, k)?;
    Ok(HodgeDims {
        harmonic: laplacian.nullity(),
        exact: complex.boundary(k).rank(),
        coexact: complex.boundary(k + 1).rank(),
    })
}

/// Nullity of `A ⊗ I + I ⊗ B` next to `nullity(A) · nullity(B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KronKernel {
    pub computed: usize,
    pub predicted: usize,
}

/// Both inputs must be positive semidefinite; otherwise the kernel identity
/// does not apply and an error is returned.
pub fn kron_sum_kernel_dim(a: &SymMatrix, b: &SymMatrix) -> Result<KronKernel> {
    if !a.is_positive_semidefinite() || !b.is_positive_semidefinite() {
        return Err(Error::NotPositiveSemidefinite);
    }
    Ok(KronKernel { computed: a.kronecker_sum(b).nullity(), predicted: a.nullity() * b.nullity() })
}

/// Small complexes with known topology.
pub mod catalog {
    use super::*;

    fn build(maximal: &[&[i64]]) -> SimplicialComplex {
        let owned: Vec<Vec<i64>> = maximal.iter().map(|s| s.to_vec()).collect();
        SimplicialComplex::from_maximal(&owned).expect("catalog complexes are valid")
    }

    /// Circle.
    pub fn hollow_triangle() -> SimplicialComplex {
        build(&[&[0, 1], &[1, 2], &[0, 2]])
    }

    /// Disk.
    pub fn solid_triangle() -> SimplicialComplex {
        build(&[&[0, 1, 2]])
    }

    pub fn two_hollow_triangles() -> SimplicialComplex {
        build(&[&[0, 1], &[1, 2], &[0, 2], &[3, 4], &[4, 5], &[3, 5]])
    }

    /// 2-sphere as the boundary of a tetrahedron.
    pub fn hollow_tetrahedron() -> SimplicialComplex {
        build(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
    }

    /// Möbius' 7-vertex triangulation of the torus.
    pub fn minimal_torus() -> SimplicialComplex {
        let mut maximal = Vec::new();
        for i in 0..7i64 {
            maximal.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
            maximal.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        SimplicialComplex::from_maximal(&maximal).expect("torus triangulation is valid")
    }

    /// Name, complex and expected Betti numbers.
    pub fn all() -> Vec<(&'static str, SimplicialComplex, Vec<u64>)> {
        vec![
            ("hollow_triangle", hollow_triangle(), vec![1, 1]),
            ("solid_triangle", solid_triangle(), vec![1, 0, 0]),
            ("two_hollow_triangles", two_hollow_triangles(), vec![2, 2]),
            ("hollow_tetrahedron", hollow_tetrahedron(), vec![1, 0, 1]),
            ("minimal_torus", minimal_torus(), vec![1, 2, 1]),
        ]
    }

    pub fn by_name(name: &str) -> Option<SimplicialComplex> {
        all().into_iter().find(|(n, _, _)| *n == name).map(|(_, c, _)| c)
    }
}

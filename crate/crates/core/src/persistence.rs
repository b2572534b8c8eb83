//! Vietoris–Rips persistent homology over `Z/2` with representative 1-cycles.
//!
//! Two routes compute the same diagram:
//!
//! * [`build_vr_filtration`] + [`compute_persistence`] materialize every
//!   simplex and reduce the boundary matrix (with clearing). This is the
//!   reference path and works for any explicit filtration.
//! * [`rips_persistence`] never materializes the triangles. H0 comes from a
//!   union-find sweep, the H1 pairing from a cohomology reduction with
//!   clearing, and the representatives from a homology reduction that only
//!   touches the death triangles.
//!
//! The second route relies on two facts. Persistence pairs depend only on the
//! simplex order, not on the algorithm. And in the left-to-right reduction a
//! positive column reduces to zero, so the reduced column of a death triangle
//! is built from earlier *negative* columns only; reducing the negative
//! columns alone reproduces it exactly.
//!
//! Simplices are totally ordered by `(value, dimension, lexicographic vertex tuple)`.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap};
use std::path::Path;

use crate::entropy::Flagged;
use crate::error::{Error, Result};
use crate::point_data::{fmt_real, save_table, SquaredDistanceMatrix};

/// A simplex of dimension 0, 1 or 2 with its filtration value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Simplex {
    verts: [u32; 3],
    dim: u8,
    pub value: f64,
}

impl Simplex {
    /// `vertices` must be strictly increasing and hold 1 to 3 entries.
    pub fn new(vertices: &[u32], value: f64) -> Self {
        assert!(
            (1..=3).contains(&vertices.len()),
            "only dimensions 0..=2 are supported"
        );
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut verts = [0; 3];
        verts[..vertices.len()].copy_from_slice(vertices);
        Self {
            verts,
            dim: (vertices.len() - 1) as u8,
            value,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn vertices(&self) -> &[u32] {
        &self.verts[..=self.dim as usize]
    }

    fn order(&self, other: &Self) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then(self.dim.cmp(&other.dim))
            .then_with(|| self.vertices().cmp(other.vertices()))
    }
}

/// Simplices sorted by the filtration total order.
#[derive(Debug, Clone, PartialEq)]
pub struct Filtration {
    simplices: Vec<Simplex>,
}

impl Filtration {
    /// Sorts the simplices and checks that every face precedes its cofaces.
    pub fn new(mut simplices: Vec<Simplex>) -> Result<Self> {
        simplices.sort_by(Simplex::order);
        let mut seen: HashMap<&[u32], f64> = HashMap::with_capacity(simplices.len());
        for s in &simplices {
            if s.dim() == 0 && s.value != 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "vertex {} enters at {} instead of 0",
                    s.verts[0], s.value
                )));
            }
            if s.dim() > 0 {
                for face in faces(s.vertices()) {
                    match seen.get(face.as_slice()) {
                        Some(&v) if v <= s.value => {}
                        _ => {
                            return Err(Error::InvalidParameter(format!(
                                "face {face:?} of {:?} is missing or enters later",
                                s.vertices()
                            )))
                        }
                    }
                }
            }
            if seen.insert(s.vertices(), s.value).is_some() {
                return Err(Error::InvalidParameter(format!(
                    "duplicate simplex {:?}",
                    s.vertices()
                )));
            }
        }
        Ok(Self { simplices })
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }
}

fn faces(verts: &[u32]) -> Vec<Vec<u32>> {
    (0..verts.len())
        .map(|skip| {
            verts
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

/// One birth–death pair. `death` is `+inf` for essential classes.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistencePair {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
    /// Sorted vertex support of the representative cycle (finite H1 pairs only).
    pub representative: Vec<usize>,
}

impl PersistencePair {
    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    pub fn is_finite(&self) -> bool {
        self.death.is_finite()
    }
}

/// Pairs grouped by dimension (H0 first), each group in death order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PersistenceDiagram {
    pairs: Vec<PersistencePair>,
}

impl PersistenceDiagram {
    pub fn new(mut pairs: Vec<PersistencePair>) -> Self {
        pairs.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then(a.death.total_cmp(&b.death))
                .then(a.birth.total_cmp(&b.birth))
                .then_with(|| a.representative.cmp(&b.representative))
        });
        Self { pairs }
    }

    pub fn pairs(&self) -> &[PersistencePair] {
        &self.pairs
    }

    pub fn dim_pairs(&self, dim: usize) -> impl Iterator<Item = &PersistencePair> + '_ {
        self.pairs.iter().filter(move |p| p.dim == dim)
    }

    pub fn finite_pairs(&self, dim: usize) -> impl Iterator<Item = &PersistencePair> + '_ {
        self.dim_pairs(dim).filter(|p| p.is_finite())
    }

    /// Largest finite persistence in `dim`, 0 when there is none.
    pub fn max_persistence(&self, dim: usize) -> f64 {
        self.finite_pairs(dim)
            .map(PersistencePair::persistence)
            .fold(0.0, f64::max)
    }

    /// Writes `dim,birth,death,representative` rows; representatives are `;`-joined.
    pub fn save_csv<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let header = ["dim", "birth", "death", "representative"].map(String::from);
        let rows: Vec<Vec<String>> = self
            .pairs
            .iter()
            .map(|p| {
                vec![
                    p.dim.to_string(),
                    fmt_real(p.birth),
                    fmt_real(p.death),
                    p.representative
                        .iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(";"),
                ]
            })
            .collect();
        save_table(path, &header, &rows)
    }
}

fn check_threshold(threshold: f64) -> Result<()> {
    if threshold.is_nan() || threshold <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "threshold must be > 0 or +inf, got {threshold}"
        )));
    }
    Ok(())
}

/// Rips filtration up to `max_dim` (1 or 2). Edges enter at the Euclidean
/// distance `sqrt(D[i][j])`, triangles at their longest edge. A threshold of
/// `+inf` keeps everything.
pub fn build_vr_filtration(
    dist: &SquaredDistanceMatrix,
    max_dim: usize,
    threshold: f64,
) -> Result<Filtration> {
    if !(1..=2).contains(&max_dim) {
        return Err(Error::InvalidParameter(format!(
            "max_dim must be 1 or 2, got {max_dim}"
        )));
    }
    check_threshold(threshold)?;
    let n = dist.len();
    let ev = |i: usize, j: usize| dist.get(i, j).sqrt();
    let mut simplices: Vec<Simplex> = (0..n).map(|i| Simplex::new(&[i as u32], 0.0)).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = ev(i, j);
            if v <= threshold {
                simplices.push(Simplex::new(&[i as u32, j as u32], v));
            }
        }
    }
    if max_dim == 2 {
        for i in 0..n {
            for j in (i + 1)..n {
                let vij = ev(i, j);
                if vij > threshold {
                    continue;
                }
                for k in (j + 1)..n {
                    let v = vij.max(ev(i, k)).max(ev(j, k));
                    if v <= threshold {
                        simplices.push(Simplex::new(&[i as u32, j as u32, k as u32], v));
                    }
                }
            }
        }
    }
    Filtration::new(simplices)
}

/// Symmetric difference of two sorted index lists.
fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn edge_support<'a>(edges: impl Iterator<Item = &'a [u32]>) -> Vec<usize> {
    let mut verts: Vec<usize> = edges.flatten().map(|&v| v as usize).collect();
    verts.sort_unstable();
    verts.dedup();
    verts
}

/// Boundary-matrix reduction over `Z/2` in filtration order, with clearing.
///
/// H0 and H1 pairs are reported; zero-persistence pairs are dropped. A finite
/// H1 pair's representative is the vertex support of the fully reduced column
/// of its death triangle.
pub fn compute_persistence(f: &Filtration) -> PersistenceDiagram {
    let s = f.simplices();
    let index: HashMap<&[u32], u32> = s
        .iter()
        .enumerate()
        .map(|(i, x)| (x.vertices(), i as u32))
        .collect();
    let boundary = |j: usize| -> Vec<u32> {
        let mut col: Vec<u32> = faces(s[j].vertices())
            .iter()
            .map(|face| index[face.as_slice()])
            .collect();
        col.sort_unstable();
        col
    };

    let mut cleared = vec![false; s.len()];
    let mut paired_with: Vec<Option<u32>> = vec![None; s.len()];
    let mut pairs = Vec::new();

    for dim in [2usize, 1] {
        let mut pivot_col: HashMap<u32, Vec<u32>> = HashMap::new();
        for j in (0..s.len()).filter(|&j| s[j].dim() == dim) {
            if cleared[j] {
                continue;
            }
            let mut col = boundary(j);
            while let Some(&low) = col.last() {
                match pivot_col.get(&low) {
                    Some(other) => col = xor_sorted(&col, other),
                    None => break,
                }
            }
            let Some(&low) = col.last() else { continue };
            cleared[low as usize] = true;
            paired_with[low as usize] = Some(j as u32);
            paired_with[j] = Some(low);
            let (birth, death) = (s[low as usize].value, s[j].value);
            if death > birth {
                let representative = if dim == 2 {
                    edge_support(col.iter().map(|&e| s[e as usize].vertices()))
                } else {
                    Vec::new()
                };
                pairs.push(PersistencePair {
                    dim: dim - 1,
                    birth,
                    death,
                    representative,
                });
            }
            pivot_col.insert(low, col);
        }
    }

    // Unpaired vertices and edges that reduced to zero are essential classes.
    // A zero edge column is exactly an edge that was never paired as a
    // pivot in dimension 1, i.e. not a negative edge.
    for (i, x) in s.iter().enumerate() {
        if x.dim() < 2 && paired_with[i].is_none() {
            pairs.push(PersistencePair {
                dim: x.dim(),
                birth: x.value,
                death: f64::INFINITY,
                representative: Vec::new(),
            });
        }
    }
    PersistenceDiagram::new(pairs)
}

/// Smallest radius at which some vertex is within reach of every other one.
/// Beyond it the Rips complex is a cone, so nothing with positive
/// persistence is born or dies there.
pub fn enclosing_radius(dist: &SquaredDistanceMatrix) -> f64 {
    let n = dist.len();
    (0..n)
        .map(|i| (0..n).map(|j| dist.get(i, j)).fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min)
        .sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct TriKey {
    value: f64,
    /// Lexicographic code `a*n^2 + b*n + c` of the sorted vertex triple.
    code: u64,
}

impl Eq for TriKey {}

// The code determines the triangle, and with it the value.
impl std::hash::Hash for TriKey {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl Ord for TriKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then(self.code.cmp(&other.code))
    }
}

impl PartialOrd for TriKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct RipsComplex {
    n: usize,
    /// Edge filtration values, row-major `n x n`.
    value: Vec<f64>,
    threshold: f64,
    /// Edges `(value, i, j)` in filtration order.
    edges: Vec<(f64, u32, u32)>,
    /// Rank of edge `(i, j)` in `edges`, `u32::MAX` if absent.
    rank: Vec<u32>,
}

impl RipsComplex {
    fn new(dist: &SquaredDistanceMatrix, threshold: f64) -> Self {
        let n = dist.len();
        let mut value = vec![0.0; n * n];
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                value[i * n + j] = dist.get(i, j).sqrt();
            }
            for j in (i + 1)..n {
                let v = value[i * n + j];
                if v <= threshold {
                    edges.push((v, i as u32, j as u32));
                }
            }
        }
        edges.sort_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))));
        let mut rank = vec![u32::MAX; n * n];
        for (r, &(_, i, j)) in edges.iter().enumerate() {
            rank[i as usize * n + j as usize] = r as u32;
            rank[j as usize * n + i as usize] = r as u32;
        }
        Self {
            n,
            value,
            threshold,
            edges,
            rank,
        }
    }

    fn v(&self, i: usize, j: usize) -> f64 {
        self.value[i * self.n + j]
    }

    fn tri_key(&self, mut t: [usize; 3]) -> TriKey {
        t.sort_unstable();
        let n = self.n as u64;
        TriKey {
            value: self
                .v(t[0], t[1])
                .max(self.v(t[0], t[2]))
                .max(self.v(t[1], t[2])),
            code: (t[0] as u64 * n + t[1] as u64) * n + t[2] as u64,
        }
    }

    fn tri_vertices(&self, key: TriKey) -> [usize; 3] {
        let n = self.n as u64;
        [
            (key.code / (n * n)) as usize,
            ((key.code / n) % n) as usize,
            (key.code % n) as usize,
        ]
    }

    fn push_coboundary(&self, edge: u32, heap: &mut BinaryHeap<Reverse<TriKey>>) {
        let (_, i, j) = self.edges[edge as usize];
        let (i, j) = (i as usize, j as usize);
        for k in 0..self.n {
            if k == i || k == j {
                continue;
            }
            let key = self.tri_key([i, j, k]);
            if key.value <= self.threshold {
                heap.push(Reverse(key));
            }
        }
    }
}

/// Pops the smallest entry that survives `Z/2` cancellation.
fn pop_pivot(heap: &mut BinaryHeap<Reverse<TriKey>>) -> Option<TriKey> {
    loop {
        let Reverse(top) = heap.pop()?;
        match heap.peek() {
            Some(&Reverse(next)) if next == top => {
                heap.pop();
            }
            _ => return Some(top),
        }
    }
}

/// H0 and H1 persistence of the Rips filtration of `dist`, identical to
/// `compute_persistence(&build_vr_filtration(dist, 2, threshold)?)` but
/// without materializing the triangles.
pub fn rips_persistence(
    dist: &SquaredDistanceMatrix,
    threshold: f64,
) -> Result<PersistenceDiagram> {
    check_threshold(threshold)?;
    let n = dist.len();
    let threshold = threshold.min(enclosing_radius(dist));
    let cx = RipsComplex::new(dist, threshold);
    let mut pairs = Vec::new();

    // H0: Kruskal sweep, the younger component dies.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut negative_edge = vec![false; cx.edges.len()];
    for (r, &(v, i, j)) in cx.edges.iter().enumerate() {
        let (a, b) = (find(&mut parent, i as usize), find(&mut parent, j as usize));
        if a == b {
            continue;
        }
        negative_edge[r] = true;
        let (elder, younger) = if a < b { (a, b) } else { (b, a) };
        parent[younger] = elder;
        if v > 0.0 {
            pairs.push(PersistencePair {
                dim: 0,
                birth: 0.0,
                death: v,
                representative: Vec::new(),
            });
        }
    }
    for v in 0..n {
        if find(&mut parent, v) == v {
            pairs.push(PersistencePair {
                dim: 0,
                birth: 0.0,
                death: f64::INFINITY,
                representative: Vec::new(),
            });
        }
    }

    // H1 pairing: cohomology, edges from latest to earliest, pivot = earliest coface.
    let mut pivot_of: HashMap<TriKey, u32> = HashMap::new();
    let mut reduction: HashMap<u32, Vec<u32>> = HashMap::new();
    let mut death_of_edge: Vec<Option<TriKey>> = vec![None; cx.edges.len()];
    let mut heap = BinaryHeap::new();
    for e in (0..cx.edges.len() as u32).rev() {
        if negative_edge[e as usize] {
            continue;
        }
        heap.clear();
        let mut v_col = vec![e];
        cx.push_coboundary(e, &mut heap);
        while let Some(pivot) = pop_pivot(&mut heap) {
            match pivot_of.get(&pivot) {
                Some(&other) => {
                    heap.push(Reverse(pivot));
                    let other_v = &reduction[&other];
                    for &x in other_v {
                        cx.push_coboundary(x, &mut heap);
                    }
                    v_col = xor_sorted(&v_col, other_v);
                }
                None => {
                    pivot_of.insert(pivot, e);
                    death_of_edge[e as usize] = Some(pivot);
                    break;
                }
            }
        }
        if death_of_edge[e as usize].is_some() {
            reduction.insert(e, v_col);
        } else {
            pairs.push(PersistencePair {
                dim: 1,
                birth: cx.edges[e as usize].0,
                death: f64::INFINITY,
                representative: Vec::new(),
            });
        }
    }

    // Representatives: homology reduction restricted to the death triangles.
    let mut deaths: Vec<(TriKey, u32)> = pivot_of.iter().map(|(&t, &e)| (t, e)).collect();
    deaths.sort_unstable();
    let mut hom_pivot: HashMap<u32, Vec<u32>> = HashMap::with_capacity(deaths.len());
    for (t, birth_edge) in deaths {
        let [a, b, c] = cx.tri_vertices(t);
        let mut col = vec![cx.rank[a * n + b], cx.rank[a * n + c], cx.rank[b * n + c]];
        col.sort_unstable();
        while let Some(&low) = col.last() {
            match hom_pivot.get(&low) {
                Some(other) => col = xor_sorted(&col, other),
                None => break,
            }
        }
        debug_assert_eq!(col.last(), Some(&birth_edge));
        let birth = cx.edges[birth_edge as usize].0;
        if t.value > birth {
            let mut representative: Vec<usize> = col
                .iter()
                .flat_map(|&r| {
                    let (_, i, j) = cx.edges[r as usize];
                    [i as usize, j as usize]
                })
                .collect();
            representative.sort_unstable();
            representative.dedup();
            pairs.push(PersistencePair {
                dim: 1,
                birth,
                death: t.value,
                representative,
            });
        }
        hom_pivot.insert(birth_edge, col);
    }
    Ok(PersistenceDiagram::new(pairs))
}

/// The `k` finite pairs of `dim` with the largest persistence. Ties go to the
/// earlier birth, then to the representative with the lower smallest vertex.
pub fn top_k_pairs(diag: &PersistenceDiagram, dim: usize, k: usize) -> PersistenceDiagram {
    let mut finite: Vec<PersistencePair> = diag.finite_pairs(dim).cloned().collect();
    finite.sort_by(|a, b| {
        b.persistence()
            .total_cmp(&a.persistence())
            .then(a.birth.total_cmp(&b.birth))
            .then_with(|| {
                let lo =
                    |p: &PersistencePair| p.representative.first().copied().unwrap_or(usize::MAX);
                lo(a).cmp(&lo(b))
            })
    });
    finite.truncate(k);
    PersistenceDiagram::new(finite)
}

/// Persistence entropy `-sum (l_i / L) ln(l_i / L)` over the finite bars of
/// `dim`. Infinite bars are excluded; no finite bars gives a degenerate 0.
pub fn persistence_entropy(diag: &PersistenceDiagram, dim: usize) -> Flagged {
    let lengths: Vec<f64> = diag
        .finite_pairs(dim)
        .map(PersistencePair::persistence)
        .filter(|&l| l > 0.0)
        .collect();
    Flagged::from_weights(&lengths, f64::ln)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point_data::{pairwise_sq_dist, PointCloud};

    fn sq(rows: &[[f64; 2]]) -> SquaredDistanceMatrix {
        let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        pairwise_sq_dist(&PointCloud::from_rows(&rows).unwrap())
    }

    const SQUARE: [[f64; 2]; 4] = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];

    #[test]
    fn square_filtration() {
        let f = build_vr_filtration(&sq(&SQUARE), 2, f64::INFINITY).unwrap();
        let count = |dim: usize, v: f64| {
            f.simplices()
                .iter()
                .filter(|s| s.dim() == dim && (s.value - v).abs() < 1e-12)
                .count()
        };
        assert_eq!(f.len(), 14);
        assert_eq!(count(0, 0.0), 4);
        assert_eq!(count(1, 1.0), 4);
        assert_eq!(count(1, 2f64.sqrt()), 2);
        assert_eq!(count(2, 2f64.sqrt()), 4);
    }

    #[test]
    fn two_points_and_threshold_cut() {
        let f = build_vr_filtration(&sq(&[[0.0, 0.0], [3.0, 0.0]]), 2, f64::INFINITY).unwrap();
        let edges: Vec<_> = f.simplices().iter().filter(|s| s.dim() == 1).collect();
        assert_eq!(edges.len(), 1);
        assert_eq!(edges[0].value, 3.0);

        let f = build_vr_filtration(&sq(&SQUARE), 2, 0.5).unwrap();
        assert!(f.simplices().iter().all(|s| s.dim() == 0));
        assert_eq!(f.len(), 4);
    }

    #[test]
    fn bad_arguments() {
        assert!(build_vr_filtration(&sq(&SQUARE), 3, 1.0).is_err());
        assert!(build_vr_filtration(&sq(&SQUARE), 2, 0.0).is_err());
        assert!(rips_persistence(&sq(&SQUARE), -1.0).is_err());
    }

    #[test]
    fn filtration_rejects_late_faces() {
        let bad = vec![
            Simplex::new(&[0], 0.0),
            Simplex::new(&[1], 0.0),
            Simplex::new(&[0, 1], 2.0),
            Simplex::new(&[0, 1, 2], 3.0),
        ];
        assert!(Filtration::new(bad).is_err());
    }

    #[test]
    fn square_diagram() {
        let d = sq(&SQUARE);
        for diag in [
            compute_persistence(&build_vr_filtration(&d, 2, f64::INFINITY).unwrap()),
            rips_persistence(&d, f64::INFINITY).unwrap(),
        ] {
            let h1: Vec<_> = diag.dim_pairs(1).collect();
            assert_eq!(h1.len(), 1);
            assert!((h1[0].birth - 1.0).abs() < 1e-12);
            assert!((h1[0].death - 2f64.sqrt()).abs() < 1e-12);
            assert_eq!(h1[0].representative, vec![0, 1, 2, 3]);
            let h0: Vec<_> = diag.dim_pairs(0).collect();
            assert_eq!(h0.len(), 4);
            assert_eq!(h0.iter().filter(|p| p.death == 1.0).count(), 3);
            assert_eq!(h0.iter().filter(|p| p.death.is_infinite()).count(), 1);
        }
    }

    #[test]
    fn no_loops() {
        let line = sq(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]);
        let tri = sq(&[[0.0, 0.0], [1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]]);
        for d in [line, tri] {
            let f = compute_persistence(&build_vr_filtration(&d, 2, f64::INFINITY).unwrap());
            assert_eq!(f.dim_pairs(1).count(), 0);
            assert_eq!(
                rips_persistence(&d, f64::INFINITY)
                    .unwrap()
                    .dim_pairs(1)
                    .count(),
                0
            );
        }
    }

    fn pair(dim: usize, birth: f64, death: f64, rep: Vec<usize>) -> PersistencePair {
        PersistencePair {
            dim,
            birth,
            death,
            representative: rep,
        }
    }

    #[test]
    fn top_k() {
        let diag = PersistenceDiagram::new(vec![
            pair(1, 0.0, 5.0, vec![0]),
            pair(1, 1.0, 3.0, vec![1]),
            pair(1, 2.0, 3.0, vec![2]),
            pair(1, 0.0, f64::INFINITY, vec![]),
            pair(0, 0.0, 9.0, vec![]),
        ]);
        let top = top_k_pairs(&diag, 1, 2);
        let lens: Vec<f64> = top.pairs().iter().map(|p| p.persistence()).collect();
        assert_eq!(lens.len(), 2);
        assert!(lens.contains(&5.0) && lens.contains(&2.0));
        assert_eq!(top_k_pairs(&diag, 1, 0).pairs().len(), 0);
        assert_eq!(top_k_pairs(&diag, 1, 10).pairs().len(), 3);
    }

    #[test]
    fn top_k_tie_break() {
        let diag = PersistenceDiagram::new(vec![
            pair(1, 1.0, 2.0, vec![5, 6]),
            pair(1, 0.5, 1.5, vec![7, 8]),
            pair(1, 1.0, 2.0, vec![3, 9]),
        ]);
        let top = top_k_pairs(&diag, 1, 2);
        let reps: Vec<_> = top
            .pairs()
            .iter()
            .map(|p| p.representative.clone())
            .collect();
        assert!(reps.contains(&vec![7, 8]));
        assert!(reps.contains(&vec![3, 9]));
    }

    #[test]
    fn entropy_examples() {
        let bars = |ls: &[f64]| {
            PersistenceDiagram::new(ls.iter().map(|&l| pair(1, 0.0, l, vec![])).collect())
        };
        assert!((persistence_entropy(&bars(&[1.0, 1.0]), 1).value - 2f64.ln()).abs() < 1e-12);
        assert_eq!(persistence_entropy(&bars(&[4.0]), 1).value, 0.0);
        let pe = persistence_entropy(&bars(&[3.0, 1.0]), 1).value;
        assert!((pe - 0.562335).abs() < 1e-6);
        let empty = persistence_entropy(&bars(&[]), 1);
        assert!(empty.degenerate && empty.value == 0.0);
        // scale invariance
        let a = persistence_entropy(&bars(&[0.3, 1.7, 2.2]), 1).value;
        let b = persistence_entropy(&bars(&[3.0, 17.0, 22.0]), 1).value;
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn square_is_stable_under_small_perturbation() {
        let eps = 1e-3;
        let base = rips_persistence(&sq(&SQUARE), f64::INFINITY).unwrap();
        let jiggled: Vec<[f64; 2]> = SQUARE
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let s = if i % 2 == 0 { eps } else { -eps };
                [p[0] + s, p[1] - 0.5 * s]
            })
            .collect();
        let moved = rips_persistence(&sq(&jiggled), f64::INFINITY).unwrap();
        let a: Vec<_> = base.dim_pairs(1).collect();
        let b: Vec<_> = moved.dim_pairs(1).collect();
        assert_eq!(a.len(), b.len());
        for (p, q) in a.iter().zip(&b) {
            let shift = (p.birth - q.birth).abs().max((p.death - q.death).abs());
            // each point moves by eps * sqrt(1.25)
            assert!(shift <= 2.0 * eps * 1.25f64.sqrt() + 1e-12, "shift {shift}");
        }
    }

    #[test]
    fn diagram_csv() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("diag.csv");
        rips_persistence(&sq(&SQUARE), f64::INFINITY)
            .unwrap()
            .save_csv(&path)
            .unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("dim,birth,death,representative\n"));
        assert!(text.contains("0;1;2;3"));
    }
}

//! Point clouds, squared-distance kernels, resampling and the sequence CSV format.
//!
//! A sequence file is a single CSV table with header
//! `frame,id,x0,...,x{d-1}[,label][,param]`. Rows are grouped by `frame`
//! (frames come out in ascending order) and sorted by `id` inside a frame.
//! Reals are written with 17 significant digits so a save/load cycle is
//! lossless.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use nalgebra::DMatrix;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// An ordered set of points in `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    coords: DMatrix<f64>,
    frame_param: Option<f64>,
    labels: Option<Vec<i64>>,
}

impl PointCloud {
    /// Builds a cloud from an `N x d` coordinate matrix.
    pub fn new(coords: DMatrix<f64>) -> Result<Self> {
        if coords.nrows() == 0 || coords.ncols() == 0 {
            return Err(Error::InvalidParameter(format!(
                "point cloud must have N >= 1 and d >= 1, got {}x{}",
                coords.nrows(),
                coords.ncols()
            )));
        }
        if let Some(pos) = coords.iter().position(|v| !v.is_finite()) {
            let (row, col) = (pos % coords.nrows(), pos / coords.nrows());
            return Err(Error::InvalidParameter(format!(
                "non-finite coordinate at point {row}, axis {col}"
            )));
        }
        Ok(Self {
            coords,
            frame_param: None,
            labels: None,
        })
    }

    /// Builds a cloud from row slices. All rows must have the same length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::Shape("rows of unequal dimension".into()));
        }
        Self::new(DMatrix::from_fn(rows.len(), d, |i, k| rows[i][k]))
    }

    pub fn with_param(mut self, param: f64) -> Self {
        self.frame_param = Some(param);
        self
    }

    pub fn with_labels(mut self, labels: Vec<i64>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::Shape(format!(
                "{} labels for {} points",
                labels.len(),
                self.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn coords(&self) -> &DMatrix<f64> {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.nrows()
    }

    /// Always false; a cloud holds at least one point.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.coords.ncols()
    }

    pub fn frame_param(&self) -> Option<f64> {
        self.frame_param
    }

    pub fn labels(&self) -> Option<&[i64]> {
        self.labels.as_deref()
    }

    pub fn point(&self, i: usize) -> Vec<f64> {
        self.coords.row(i).iter().copied().collect()
    }

    /// Keeps only the rows listed in `indices` (duplicates allowed), in that order.
    pub fn select(&self, indices: &[usize]) -> Self {
        let coords = DMatrix::from_fn(indices.len(), self.dim(), |r, k| {
            self.coords[(indices[r], k)]
        });
        Self {
            coords,
            frame_param: self.frame_param,
            labels: self
                .labels
                .as_ref()
                .map(|l| indices.iter().map(|&i| l[i]).collect()),
        }
    }

    /// Keeps only the given coordinate axes.
    pub fn project(&self, axes: &[usize]) -> Result<Self> {
        if axes.is_empty() || axes.iter().any(|&a| a >= self.dim()) {
            return Err(Error::InvalidParameter(format!(
                "axes {axes:?} out of range for d = {}",
                self.dim()
            )));
        }
        let coords = DMatrix::from_fn(self.len(), axes.len(), |i, k| self.coords[(i, axes[k])]);
        Ok(Self {
            coords,
            frame_param: self.frame_param,
            labels: self.labels.clone(),
        })
    }

    /// Zero mean and unit variance per coordinate. Constant axes are only centered.
    pub fn standardized(&self) -> Self {
        let n = self.len() as f64;
        let mut coords = self.coords.clone();
        for mut col in coords.column_iter_mut() {
            let mean = col.sum() / n;
            let var = col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
            let sd = var.sqrt();
            for v in col.iter_mut() {
                *v -= mean;
                if sd > 0.0 {
                    *v /= sd;
                }
            }
        }
        Self {
            coords,
            frame_param: self.frame_param,
            labels: self.labels.clone(),
        }
    }
}

/// Symmetric, zero-diagonal, nonnegative matrix of squared distances.
#[derive(Debug, Clone, PartialEq)]
pub struct SquaredDistanceMatrix(DMatrix<f64>);

impl SquaredDistanceMatrix {
    /// Validates and wraps a matrix. Asymmetry up to `1e-9` relative is symmetrized away.
    pub fn from_matrix(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Shape(format!(
                "{}x{} is not square",
                m.nrows(),
                m.ncols()
            )));
        }
        let scale = m.amax().max(1.0);
        let n = m.nrows();
        let mut out = m;
        for i in 0..n {
            if out[(i, i)].abs() > 1e-9 * scale {
                return Err(Error::InvalidParameter(format!("nonzero diagonal at {i}")));
            }
            out[(i, i)] = 0.0;
            for j in (i + 1)..n {
                let (a, b) = (out[(i, j)], out[(j, i)]);
                if !a.is_finite() || !b.is_finite() {
                    return Err(Error::Numerical(format!("non-finite entry at ({i}, {j})")));
                }
                if (a - b).abs() > 1e-9 * scale || a < -1e-9 * scale {
                    return Err(Error::InvalidParameter(format!(
                        "entry ({i}, {j}) is asymmetric or negative"
                    )));
                }
                let v = (0.5 * (a + b)).max(0.0);
                out[(i, j)] = v;
                out[(j, i)] = v;
            }
        }
        Ok(Self(out))
    }

    pub(crate) fn from_matrix_unchecked(m: DMatrix<f64>) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.0.nrows() == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn max_value(&self) -> f64 {
        self.0.max()
    }

    /// Gaussian affinity `exp(-D / (2 sigma^2))`.
    pub fn gaussian_affinity(&self, sigma: f64) -> DMatrix<f64> {
        let s = 2.0 * sigma * sigma;
        self.0.map(|v| (-v / s).exp())
    }
}

/// Which kernel an MTN is built on.
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    #[default]
    SquaredEuclidean,
    Gaussian {
        sigma: f64,
    },
}

/// `values[i][j] = sum_k (x_ik - x_jk)^2`.
pub fn pairwise_sq_dist(cloud: &PointCloud) -> SquaredDistanceMatrix {
    let x = cloud.coords();
    let n = x.nrows();
    let mut d = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let mut s = 0.0;
            for k in 0..x.ncols() {
                let diff = x[(i, k)] - x[(j, k)];
                s += diff * diff;
            }
            d[(i, j)] = s;
            d[(j, i)] = s;
        }
    }
    SquaredDistanceMatrix(d)
}

/// Draws `m` points: without replacement (original order kept) when `m <= N`,
/// with replacement otherwise.
pub fn resample(cloud: &PointCloud, m: usize, seed: u64) -> Result<PointCloud> {
    if m == 0 {
        return Err(Error::InvalidParameter("resample size must be >= 1".into()));
    }
    let n = cloud.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let indices: Vec<usize> = if m <= n {
        let mut idx = index::sample(&mut rng, n, m).into_vec();
        idx.sort_unstable();
        idx
    } else {
        (0..m).map(|_| rng.random_range(0..n)).collect()
    };
    Ok(cloud.select(&indices))
}

/// An ordered list of frames sharing one ambient dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceDataset {
    frames: Vec<PointCloud>,
}

impl SequenceDataset {
    pub fn new(frames: Vec<PointCloud>) -> Result<Self> {
        let Some(first) = frames.first() else {
            return Err(Error::Schema("sequence has no frames".into()));
        };
        let d = first.dim();
        if let Some((i, f)) = frames.iter().enumerate().find(|(_, f)| f.dim() != d) {
            return Err(Error::Schema(format!(
                "frame {i} has dimension {}, expected {d}",
                f.dim()
            )));
        }
        Ok(Self { frames })
    }

    pub fn frames(&self) -> &[PointCloud] {
        &self.frames
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.frames[0].dim()
    }

    /// Frame parameters; frames without one report their index.
    pub fn params(&self) -> Vec<f64> {
        self.frames
            .iter()
            .enumerate()
            .map(|(i, f)| f.frame_param().unwrap_or(i as f64))
            .collect()
    }

    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let frames = indices
            .iter()
            .map(|&i| {
                self.frames
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::InvalidParameter(format!("frame index {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(frames)
    }

    pub fn has_labels(&self) -> bool {
        self.frames.iter().any(|f| f.labels().is_some())
    }

    /// Splits every frame by region label. Frames lacking a label are skipped
    /// for that label; each label's sequence keeps the frame order.
    pub fn split_by_label(&self) -> Result<BTreeMap<i64, SequenceDataset>> {
        let mut per_label: BTreeMap<i64, Vec<PointCloud>> = BTreeMap::new();
        for frame in &self.frames {
            let Some(labels) = frame.labels() else {
                continue;
            };
            let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
            for (i, &l) in labels.iter().enumerate() {
                groups.entry(l).or_default().push(i);
            }
            for (l, idx) in groups {
                per_label.entry(l).or_default().push(frame.select(&idx));
            }
        }
        per_label
            .into_iter()
            .map(|(l, frames)| Ok((l, SequenceDataset::new(frames)?)))
            .collect()
    }
}

/// Formats a real with 17 significant digits.
pub fn fmt_real(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Writes a CSV table atomically (temp file, then rename).
pub fn save_table<P: AsRef<Path>>(path: P, header: &[String], rows: &[Vec<String>]) -> Result<()> {
    let path = path.as_ref();
    let mut buf = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        w.flush()?;
    }
    write_atomic(path, &buf)
}

pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::InvalidParameter(format!("{} is not a file path", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.tmp", file_name.to_string_lossy()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Writes a sequence in the sequence CSV schema.
pub fn save_sequence<P: AsRef<Path>>(seq: &SequenceDataset, path: P) -> Result<()> {
    let d = seq.dim();
    let with_labels = seq.has_labels();
    let with_param = seq.frames().iter().any(|f| f.frame_param().is_some());
    let mut header: Vec<String> = vec!["frame".into(), "id".into()];
    header.extend((0..d).map(|k| format!("x{k}")));
    if with_labels {
        header.push("label".into());
    }
    if with_param {
        header.push("param".into());
    }
    let mut rows = Vec::new();
    for (f, frame) in seq.frames().iter().enumerate() {
        for i in 0..frame.len() {
            let mut row = vec![f.to_string(), i.to_string()];
            row.extend(frame.coords().row(i).iter().map(|&v| fmt_real(v)));
            if with_labels {
                row.push(frame.labels().map_or(String::new(), |l| l[i].to_string()));
            }
            if with_param {
                row.push(frame.frame_param().map_or(String::new(), fmt_real));
            }
            rows.push(row);
        }
    }
    save_table(path, &header, &rows)
}

/// Input format selector. CSV is the only on-disk format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SequenceFormat {
    #[default]
    Csv,
}

struct RawRow {
    id: i64,
    coords: Vec<f64>,
    label: Option<i64>,
    param: Option<f64>,
    line: u64,
}

/// Reads a sequence CSV.
pub fn load_sequence<P: AsRef<Path>>(path: P, format: SequenceFormat) -> Result<SequenceDataset> {
    let SequenceFormat::Csv = format;
    let file = fs::File::open(path.as_ref())?;
    read_sequence(file)
}

/// Reads a sequence CSV from any reader.
pub fn read_sequence<R: std::io::Read>(reader: R) -> Result<SequenceDataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if header.len() < 3 || header[0] != "frame" || header[1] != "id" {
        return Err(Error::Schema(format!(
            "expected header `frame,id,x0,...`, got `{}`",
            header.join(",")
        )));
    }
    let coord_cols: Vec<usize> = (2..header.len())
        .take_while(|&c| header[c] == format!("x{}", c - 2))
        .collect();
    if coord_cols.is_empty() {
        return Err(Error::Schema("no coordinate columns".into()));
    }
    let mut label_col = None;
    let mut param_col = None;
    for (c, name) in header.iter().enumerate().skip(2 + coord_cols.len()) {
        match name.as_str() {
            "label" if label_col.is_none() => label_col = Some(c),
            "param" if param_col.is_none() => param_col = Some(c),
            other => return Err(Error::Schema(format!("unexpected column `{other}`"))),
        }
    }

    let mut frames: BTreeMap<i64, Vec<RawRow>> = BTreeMap::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let parse_err = |message: String| Error::Parse { line, message };
        let field = |c: usize| rec.get(c).unwrap_or("");
        let frame: i64 = field(0)
            .parse()
            .map_err(|_| parse_err(format!("bad frame `{}`", field(0))))?;
        let id: i64 = field(1)
            .parse()
            .map_err(|_| parse_err(format!("bad id `{}`", field(1))))?;
        // Trailing empty coordinates shorten this row's dimension.
        let mut coords = Vec::with_capacity(coord_cols.len());
        for &c in &coord_cols {
            let s = field(c);
            if s.is_empty() {
                break;
            }
            let v: f64 = s.parse().map_err(|_| {
                parse_err(format!(
                    "non-numeric coordinate `{s}` in column {}",
                    header[c]
                ))
            })?;
            if !v.is_finite() {
                return Err(parse_err(format!("non-finite coordinate `{s}`")));
            }
            coords.push(v);
        }
        if coords.is_empty() {
            return Err(parse_err("row has no coordinates".into()));
        }
        let label = match label_col.map(field) {
            Some(s) if !s.is_empty() => Some(
                s.parse()
                    .map_err(|_| parse_err(format!("bad label `{s}`")))?,
            ),
            _ => None,
        };
        let param = match param_col.map(field) {
            Some(s) if !s.is_empty() => Some(
                s.parse()
                    .map_err(|_| parse_err(format!("bad param `{s}`")))?,
            ),
            _ => None,
        };
        frames.entry(frame).or_default().push(RawRow {
            id,
            coords,
            label,
            param,
            line,
        });
    }

    let mut clouds = Vec::with_capacity(frames.len());
    for (frame, mut rows) in frames {
        rows.sort_by_key(|r| r.id);
        if let Some(w) = rows.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::Schema(format!(
                "duplicate id {} in frame {frame} (line {})",
                w[1].id, w[1].line
            )));
        }
        let d = rows[0].coords.len();
        if let Some(r) = rows.iter().find(|r| r.coords.len() != d) {
            return Err(Error::Schema(format!(
                "inconsistent dimension in frame {frame} at line {}",
                r.line
            )));
        }
        let coords = DMatrix::from_fn(rows.len(), d, |i, k| rows[i].coords[k]);
        let mut cloud = PointCloud::new(coords)?;
        if let Some(p) = rows.iter().find_map(|r| r.param) {
            cloud = cloud.with_param(p);
        }
        if rows.iter().any(|r| r.label.is_some()) {
            let labels = rows
                .iter()
                .map(|r| {
                    r.label.ok_or_else(|| {
                        Error::Schema(format!("missing label in frame {frame} at line {}", r.line))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            cloud = cloud.with_labels(labels)?;
        }
        clouds.push(cloud);
    }
    SequenceDataset::new(clouds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cloud(rows: &[&[f64]]) -> PointCloud {
        PointCloud::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn sq_dist_examples() {
        let d = pairwise_sq_dist(&cloud(&[&[0.0, 0.0], &[3.0, 4.0]]));
        assert_eq!(
            d.matrix(),
            &DMatrix::from_row_slice(2, 2, &[0.0, 25.0, 25.0, 0.0])
        );

        let d = pairwise_sq_dist(&cloud(&[&[1.5, -2.0]]));
        assert_eq!(d.matrix(), &DMatrix::zeros(1, 1));

        let h = 3f64.sqrt() / 2.0;
        let d = pairwise_sq_dist(&cloud(&[&[0.0, 0.0], &[1.0, 0.0], &[0.5, h]]));
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 0.0 } else { 1.0 };
                assert!((d.get(i, j) - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn rejects_invalid_clouds() {
        assert!(PointCloud::new(DMatrix::zeros(0, 2)).is_err());
        assert!(PointCloud::new(DMatrix::from_element(2, 2, f64::NAN)).is_err());
    }

    #[test]
    fn resample_contracts() {
        let big = PointCloud::new(DMatrix::from_fn(600, 2, |i, k| (i * 2 + k) as f64)).unwrap();
        let same = resample(&big, 600, 1).unwrap();
        assert_eq!(same, big);

        let c =
            PointCloud::new(DMatrix::from_fn(200, 2, |i, k| (i as f64).sin() + k as f64)).unwrap();
        assert_eq!(resample(&c, 50, 9).unwrap(), resample(&c, 50, 9).unwrap());
        assert_eq!(resample(&c, 50, 9).unwrap().len(), 50);

        let small = PointCloud::new(DMatrix::from_fn(10, 2, |i, k| (10 * i + k) as f64)).unwrap();
        let up = resample(&small, 20, 3).unwrap();
        assert_eq!(up.len(), 20);
        for i in 0..20 {
            let p = up.point(i);
            assert!((0..10).any(|j| small.point(j) == p));
        }
        assert!(resample(&small, 0, 3).is_err());
    }

    #[test]
    fn resample_carries_labels() {
        let c = PointCloud::new(DMatrix::from_fn(5, 1, |i, _| i as f64))
            .unwrap()
            .with_labels(vec![0, 1, 2, 3, 4])
            .unwrap();
        let r = resample(&c, 3, 11).unwrap();
        for i in 0..3 {
            assert_eq!(r.labels().unwrap()[i] as f64, r.coords()[(i, 0)]);
        }
    }

    #[test]
    fn standardize_moments() {
        let c = PointCloud::new(DMatrix::from_fn(50, 3, |i, k| {
            (i * (k + 1)) as f64 * 0.3 + 2.0
        }))
        .unwrap();
        let s = c.standardized();
        for col in s.coords().column_iter() {
            let mean = col.sum() / 50.0;
            let var = col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / 50.0;
            assert!(mean.abs() < 1e-12);
            assert!((var - 1.0).abs() < 1e-12 || var == 0.0);
        }
    }

    #[test]
    fn csv_two_frames() {
        let text = "frame,id,x0,x1\n0,0,0,0\n0,1,1,0\n0,2,0,1\n1,2,5,5\n1,0,3,3\n1,1,4,4\n";
        let seq = read_sequence(text.as_bytes()).unwrap();
        assert_eq!(
            seq.frames().iter().map(PointCloud::len).collect::<Vec<_>>(),
            vec![3, 3]
        );
        assert_eq!(seq.frames()[1].point(0), vec![3.0, 3.0]);
    }

    #[test]
    fn csv_errors() {
        let text = "frame,id,x0,x1\n0,0,0,0\n0,1,abc,0\n";
        match read_sequence(text.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        let text = "frame,id,x0,x1\n0,0,0,0\n0,1,1,1\n1,0,2\n1,1,3\n";
        assert!(matches!(
            read_sequence(text.as_bytes()),
            Err(Error::Schema(_))
        ));
        let text = "frame,id,y0\n0,0,1\n";
        assert!(matches!(
            read_sequence(text.as_bytes()),
            Err(Error::Schema(_))
        ));
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let mk = |p: f64| {
            PointCloud::new(DMatrix::from_fn(4, 2, |i, k| {
                (i as f64 + 0.1).ln() * std::f64::consts::PI / (k as f64 + 3.0) + p
            }))
            .unwrap()
            .with_param(p)
        };
        let seq = SequenceDataset::new(vec![mk(-1.0 / 3.0), mk(0.7)]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("seq.csv");
        save_sequence(&seq, &path).unwrap();
        let back = load_sequence(&path, SequenceFormat::Csv).unwrap();
        assert_eq!(back, seq);
    }

    #[test]
    fn labels_round_trip_and_split() {
        let c = PointCloud::new(DMatrix::from_fn(4, 2, |i, k| (i + k) as f64))
            .unwrap()
            .with_labels(vec![7, 3, 7, 3])
            .unwrap();
        let seq = SequenceDataset::new(vec![c.clone(), c]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("seq.csv");
        save_sequence(&seq, &path).unwrap();
        let back = load_sequence(&path, SequenceFormat::Csv).unwrap();
        let split = back.split_by_label().unwrap();
        assert_eq!(split.keys().copied().collect::<Vec<_>>(), vec![3, 7]);
        assert_eq!(split[&3].frames()[0].len(), 2);
        assert_eq!(split[&3].len(), 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn sq_dist_is_a_metric_after_sqrt(pts in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 2..12)) {
            let rows: Vec<Vec<f64>> = pts.iter().map(|&(a, b)| vec![a, b]).collect();
            let d = pairwise_sq_dist(&PointCloud::from_rows(&rows).unwrap());
            let n = rows.len();
            for i in 0..n {
                prop_assert_eq!(d.get(i, i), 0.0);
                for j in 0..n {
                    prop_assert_eq!(d.get(i, j), d.get(j, i));
                    prop_assert!(d.get(i, j) >= 0.0);
                    for k in 0..n {
                        let lhs = d.get(i, k).sqrt();
                        let rhs = d.get(i, j).sqrt() + d.get(j, k).sqrt();
                        prop_assert!(lhs <= rhs + 1e-12);
                    }
                }
            }
        }

        #[test]
        fn resample_is_pure(seed in any::<u64>(), m in 1usize..40) {
            let c = PointCloud::new(DMatrix::from_fn(17, 2, |i, k| (i * 3 + k) as f64)).unwrap();
            prop_assert_eq!(resample(&c, m, seed).unwrap(), resample(&c, m, seed).unwrap());
        }
    }
}

//! The code object `(H, K, G)`, codeword checks, codebook enumeration and
//! rates.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Field, Matrix, RowSpace};
use crate::limits::{checked_span_size, span_cap};

/// A multi-rack code: `M` racks of `N` nodes over GF(q), with intra-rack
/// parity `H` (S₁×N), inter-rack parity `K` (S₂×N) and helper parity `G`
/// (L×M).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    field: Field,
    m: usize,
    n: usize,
    h: Matrix,
    k: Matrix,
    g: Matrix,
}

/// On-disk form of a [`CodeSpec`]. Entries may be any integers; they are
/// reduced mod q on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpecDoc {
    pub q: u32,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "H", default)]
    pub h: Vec<Vec<i64>>,
    #[serde(rename = "K", default)]
    pub k: Vec<Vec<i64>>,
    #[serde(rename = "G", default)]
    pub g: Vec<Vec<i64>>,
}

impl CodeSpecDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<CodeSpec> {
        let field = Field::new(self.q)?;
        let h = named_matrix(field, "H", self.n, &self.h)?;
        let k = named_matrix(field, "K", self.n, &self.k)?;
        let g = named_matrix(field, "G", self.m, &self.g)?;
        CodeSpec::new(field, self.m, self.n, h, k, g)
    }
}

fn named_matrix(field: Field, name: &str, cols: usize, rows: &[Vec<i64>]) -> Result<Matrix> {
    Matrix::from_rows(field, cols, rows).map_err(|e| match e {
        Error::DimensionMismatch(msg) => Error::DimensionMismatch(format!("{name}: {msg}")),
        other => other,
    })
}

impl CodeSpec {
    pub fn new(field: Field, m: usize, n: usize, h: Matrix, k: Matrix, g: Matrix) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidSpec("M and N must be positive".into()));
        }
        for (name, mat, cols) in [("H", &h, n), ("K", &k, n), ("G", &g, m)] {
            if mat.cols() != cols {
                return Err(Error::DimensionMismatch(format!("{name} has {} columns, expected {cols}", mat.cols())));
            }
            if mat.field() != field {
                return Err(Error::DimensionMismatch(format!("{name} is over {}, expected {field}", mat.field())));
            }
        }
        Ok(CodeSpec { field, m, n, h, k, g })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        CodeSpecDoc::from_json(text)?.build()
    }

    /// Two racks with the canonical helper matrix `G = [1, -1]`.
    pub fn two_rack(h: Matrix, k: Matrix) -> Result<Self> {
        let field = h.field();
        let n = h.cols();
        let g = Matrix::from_rows(field, 2, &[[1, -1]])?;
        CodeSpec::new(field, 2, n, h, k, g)
    }

    pub fn to_doc(&self) -> CodeSpecDoc {
        let rows =
            |m: &Matrix| -> Vec<Vec<i64>> { m.iter_rows().map(|r| r.iter().map(|&v| v as i64).collect()).collect() };
        CodeSpecDoc {
            q: self.field.q() as u32,
            m: self.m,
            n: self.n,
            h: rows(&self.h),
            k: rows(&self.k),
            g: rows(&self.g),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn racks(&self) -> usize {
        self.m
    }

    pub fn nodes(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> &Matrix {
        &self.h
    }

    pub fn k(&self) -> &Matrix {
        &self.k
    }

    pub fn g(&self) -> &Matrix {
        &self.g
    }

    /// The full parity system on the `M·N` symbols, `X[m][n]` at index
    /// `m·N + n`: `M·S₁` rows from `H` followed by `L·S₂` rows from `K ⊗ G`.
    pub fn stacked_system(&self) -> Matrix {
        let (m, n, f) = (self.m, self.n, self.field);
        let (s1, s2, l) = (self.h.rows(), self.k.rows(), self.g.rows());
        let mut sys = Matrix::zeros(f, m * s1 + l * s2, m * n);
        for rack in 0..m {
            for s in 0..s1 {
                for node in 0..n {
                    sys.set(rack * s1 + s, rack * n + node, self.h.get(s, node));
                }
            }
        }
        let base = m * s1;
        for kr in 0..s2 {
            for lr in 0..l {
                let row = base + kr * l + lr;
                for rack in 0..m {
                    let gv = self.g.get(lr, rack);
                    if gv == 0 {
                        continue;
                    }
                    for node in 0..n {
                        sys.set(row, rack * n + node, f.mul(self.k.get(kr, node), gv));
                    }
                }
            }
        }
        sys
    }

    /// `log_q` of the codebook size.
    pub fn dimension(&self) -> usize {
        self.m * self.n - self.stacked_system().rank()
    }

    pub fn is_codeword(&self, x: &CodewordMatrix) -> Result<bool> {
        self.check_shape(x)?;
        let sys = self.stacked_system();
        Ok(sys.mul_vec(x.as_flat())?.iter().all(|&v| v == 0))
    }

    fn check_shape(&self, x: &CodewordMatrix) -> Result<()> {
        let mx = &x.0;
        if mx.rows() != self.m || mx.cols() != self.n || mx.field() != self.field {
            return Err(Error::DimensionMismatch(format!(
                "codeword is {}x{} over {}, spec is {}x{} over {}",
                mx.rows(),
                mx.cols(),
                mx.field(),
                self.m,
                self.n,
                self.field
            )));
        }
        Ok(())
    }

    /// Every codeword, each exactly once.
    pub fn enumerate_codebook(&self) -> Result<impl Iterator<Item = CodewordMatrix>> {
        let basis = self.stacked_system().kernel_basis();
        let (q, dim, cap) = (self.field.q(), basis.rows(), span_cap());
        if checked_span_size(q, dim, cap).is_none() {
            return Err(Error::CodebookTooLarge { q, dim, cap });
        }
        let (f, m, n) = (self.field, self.m, self.n);
        Ok(RowSpace::new(basis, cap)?
            .map(move |v| CodewordMatrix(Matrix::from_flat(f, m, n, v).expect("kernel vector has M·N entries"))))
    }

    pub fn rate(&self) -> CodeRate {
        let mn = (self.m * self.n) as i64;
        let bound_num = mn - (self.m * self.h.rows()) as i64 - (self.g.rows() * self.k.rows()) as i64;
        CodeRate { lower_bound: Ratio::new(bound_num, mn), exact: Ratio::new(self.dimension() as i64, mn) }
    }

    pub fn sampler(&self, seed: u64) -> CodewordSampler {
        CodewordSampler {
            basis: self.stacked_system().kernel_basis(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            racks: self.m,
            nodes: self.n,
        }
    }

    /// A uniformly random codeword, deterministic in `seed`.
    pub fn random_codeword(&self, seed: u64) -> CodewordMatrix {
        self.sampler(seed).sample()
    }
}

/// Dimension-count lower bound `(MN − MS₁ − LS₂)/(MN)` next to the exact rate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeRate {
    pub lower_bound: Ratio<i64>,
    pub exact: Ratio<i64>,
}

/// Draws uniform codewords by sampling coordinates over a kernel basis.
#[derive(Clone, Debug)]
pub struct CodewordSampler {
    basis: Matrix,
    rng: ChaCha8Rng,
    racks: usize,
    nodes: usize,
}

impl CodewordSampler {
    pub fn sample(&mut self) -> CodewordMatrix {
        let f = self.basis.field();
        let coeffs: Vec<u16> = (0..self.basis.rows()).map(|_| self.rng.gen_range(0..f.q())).collect();
        let flat = self.basis.combine_rows(&coeffs).expect("one coefficient per basis row");
        let flat = if flat.is_empty() { vec![0; self.racks * self.nodes] } else { flat };
        CodewordMatrix(Matrix::from_flat(f, self.racks, self.nodes, flat).expect("shape"))
    }
}

/// The `M x N` matrix of stored symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CodewordMatrix(pub Matrix);

impl CodewordMatrix {
    pub fn zeros(spec: &CodeSpec) -> Self {
        CodewordMatrix(Matrix::zeros(spec.field, spec.m, spec.n))
    }

    pub fn get(&self, rack: usize, node: usize) -> u16 {
        self.0.get(rack, node)
    }

    pub fn set(&mut self, rack: usize, node: usize, v: u16) {
        self.0.set(rack, node, v)
    }

    pub fn rack(&self, rack: usize) -> &[u16] {
        self.0.row(rack)
    }

    pub fn as_flat(&self) -> &[u16] {
        self.0.as_flat()
    }
}

/// Validation outcome for a spec document.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
    pub rank_h: Option<usize>,
    pub rank_k: Option<usize>,
    pub rank_hk: Option<usize>,
    pub rank_g: Option<usize>,
}

/// Checks dimensions and reports rank deficiencies. Never fails; problems
/// are listed in the report.
pub fn validate_spec(doc: &CodeSpecDoc) -> ValidationReport {
    let mut report = ValidationReport::default();
    let field = match Field::new(doc.q) {
        Ok(f) => f,
        Err(e) => {
            report.errors.push(e.to_string());
            return report;
        }
    };
    if doc.m == 0 || doc.n == 0 {
        report.errors.push("M and N must be positive".into());
    }
    let mut load = |name: &str, cols: usize, rows: &[Vec<i64>]| match named_matrix(field, name, cols, rows) {
        Ok(m) => Some(m),
        Err(e) => {
            report.errors.push(e.to_string());
            None
        }
    };
    let h = load("H", doc.n, &doc.h);
    let k = load("K", doc.n, &doc.k);
    let g = load("G", doc.m, &doc.g);

    if let Some(h) = &h {
        let r = h.rank();
        report.rank_h = Some(r);
        if r < h.rows() {
            report.warnings.push("H rows dependent".into());
        }
    }
    if let Some(k) = &k {
        let r = k.rank();
        report.rank_k = Some(r);
        if r < k.rows() {
            report.warnings.push("K rows dependent".into());
        }
    }
    if let (Some(h), Some(k)) = (&h, &k) {
        let r = h.stack(k).expect("same width").rank();
        report.rank_hk = Some(r);
        if r < h.rows() + k.rows() && report.rank_h == Some(h.rows()) && report.rank_k == Some(k.rows()) {
            report.warnings.push("H and K rows jointly dependent".into());
        }
        if h.rows() + k.rows() > doc.n {
            report.warnings.push(format!(
                "S1 + S2 = {} exceeds N = {}; the code is degenerate",
                h.rows() + k.rows(),
                doc.n
            ));
        }
    }
    if let Some(g) = &g {
        let r = g.rank();
        report.rank_g = Some(r);
        if r < g.rows() {
            report.warnings.push("G rows dependent".into());
        }
        if g.rows() > doc.m {
            report.warnings.push(format!("L = {} exceeds M = {}", g.rows(), doc.m));
        }
    }
    report.valid = report.errors.is_empty();
    report
}

/// The two-rack code `{(x, y) : Hx = Hy = 0, Kx = Ky}` with its codebook.
#[derive(Clone, Debug)]
pub struct TwoRackCode {
    pub h: Matrix,
    pub k: Matrix,
    pub codebook: Vec<(Vec<u16>, Vec<u16>)>,
}

impl TwoRackCode {
    pub fn new(h: Matrix, k: Matrix) -> Result<Self> {
        let sys = two_rack_parity(&h, &k)?;
        let n = h.cols();
        let basis = sys.kernel_basis();
        let (q, dim, cap) = (h.field().q(), basis.rows(), span_cap());
        if checked_span_size(q, dim, cap).is_none() {
            return Err(Error::CodebookTooLarge { q, dim, cap });
        }
        let codebook = RowSpace::new(basis, cap)?.map(|v| (v[..n].to_vec(), v[n..].to_vec())).collect();
        Ok(TwoRackCode { h, k, codebook })
    }

    /// Views a two-rack spec as a two-rack code. `G` must span `[1, -1]`.
    pub fn from_spec(spec: &CodeSpec) -> Result<Self> {
        let f = spec.field();
        let canonical = Matrix::from_rows(f, 2, &[[1, -1]])?;
        if spec.racks() != 2 || spec.g().row_basis() != canonical.row_basis() {
            return Err(Error::InvalidSpec("a two-rack code needs M = 2 and G spanning [1, -1]".into()));
        }
        TwoRackCode::new(spec.h().clone(), spec.k().clone())
    }

    pub fn field(&self) -> Field {
        self.h.field()
    }

    pub fn len(&self) -> usize {
        self.h.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.h.cols() == 0
    }

    pub fn size(&self) -> usize {
        self.codebook.len()
    }
}

/// Parity rows `[H 0], [0 H], [K −K]` of the two-rack code; their row
/// space is the dual code.
pub fn two_rack_parity(h: &Matrix, k: &Matrix) -> Result<Matrix> {
    let (f, n) = (h.field(), h.cols());
    if k.cols() != n || k.field() != f {
        return Err(Error::DimensionMismatch(format!("K has {} columns, H has {n}", k.cols())));
    }
    let mut sys = Matrix::zeros(f, 2 * h.rows() + k.rows(), 2 * n);
    for r in 0..h.rows() {
        for c in 0..n {
            sys.set(r, c, h.get(r, c));
            sys.set(h.rows() + r, n + c, h.get(r, c));
        }
    }
    let base = 2 * h.rows();
    for r in 0..k.rows() {
        for c in 0..n {
            sys.set(base + r, c, k.get(r, c));
            sys.set(base + r, n + c, f.neg(k.get(r, c)));
        }
    }
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    pub(crate) fn example3() -> CodeSpec {
        CodeSpec::from_json(
            r#"{"q":2,"M":5,"N":8,
            "H":[[1,1,1,0,1,0,0,0],[1,1,0,1,0,1,0,0],[0,1,1,1,0,0,1,0],[1,0,1,1,0,0,0,1]],
            "K":[[1,1,0,1,1,0,0,1],[0,1,1,0,1,0,1,1]],
            "G":[[1,1,1,1,0],[0,1,1,1,1],[1,1,0,1,1]]}"#,
        )
        .unwrap()
    }

    fn toy() -> CodeSpec {
        CodeSpec::from_json(r#"{"q":2,"M":2,"N":4,"H":[[1,1,1,1]],"K":[[1,0,0,0]],"G":[[1,1]]}"#).unwrap()
    }

    #[test]
    fn validate_example3() {
        let r = validate_spec(&example3().to_doc());
        assert!(r.valid);
        assert!(r.warnings.is_empty(), "{:?}", r.warnings);
        assert_eq!((r.rank_h, r.rank_k, r.rank_g), (Some(4), Some(2), Some(3)));
    }

    #[test]
    fn validate_flags_problems() {
        let mut doc = toy().to_doc();
        doc.h = vec![vec![1, 1, 1, 1], vec![1, 1, 1, 1]];
        let r = validate_spec(&doc);
        assert!(r.valid);
        assert!(r.warnings.iter().any(|w| w == "H rows dependent"));

        let mut doc = toy().to_doc();
        doc.k = vec![vec![1, 0, 0]];
        let r = validate_spec(&doc);
        assert!(!r.valid);
        assert!(r.errors[0].contains('K'));
        assert!(doc.build().is_err());

        let mut doc = toy().to_doc();
        doc.q = 4;
        assert!(!validate_spec(&doc).valid);
    }

    #[test]
    fn codeword_checks() {
        let spec = example3();
        assert!(spec.is_codeword(&CodewordMatrix::zeros(&spec)).unwrap());
        let mut x = CodewordMatrix::zeros(&spec);
        x.set(0, 0, 1);
        assert!(!spec.is_codeword(&x).unwrap());
        for seed in 0..20 {
            assert!(spec.is_codeword(&spec.random_codeword(seed)).unwrap());
        }
        let wrong = CodewordMatrix(Matrix::zeros(spec.field(), 4, 8));
        assert!(matches!(spec.is_codeword(&wrong), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn toy_codebook_matches_brute_force() {
        let spec = toy();
        let words: Vec<_> = spec.enumerate_codebook().unwrap().collect();
        assert_eq!(words.len(), 32);
        let set: HashSet<_> = words.iter().collect();
        assert_eq!(set.len(), 32);

        let mut brute = 0;
        for bits in 0..256u32 {
            let flat: Vec<u16> = (0..8).map(|i| ((bits >> i) & 1) as u16).collect();
            let x = CodewordMatrix(Matrix::from_flat(spec.field(), 2, 4, flat).unwrap());
            if spec.is_codeword(&x).unwrap() {
                brute += 1;
                assert!(set.contains(&x));
            }
        }
        assert_eq!(brute, 32);
    }

    #[test]
    fn identity_h_gives_zero_code() {
        let f = Field::new(3).unwrap();
        let spec =
            CodeSpec::new(f, 2, 3, Matrix::identity(f, 3), Matrix::zeros(f, 0, 3), Matrix::zeros(f, 0, 2)).unwrap();
        let all: Vec<_> = spec.enumerate_codebook().unwrap().collect();
        assert_eq!(all, vec![CodewordMatrix::zeros(&spec)]);
        assert_eq!(spec.random_codeword(7), CodewordMatrix::zeros(&spec));
    }

    #[test]
    fn rates() {
        let r = example3().rate();
        assert_eq!(r.lower_bound, Ratio::new(14, 40));
        assert_eq!(r.exact, Ratio::new(14, 40));
        assert_eq!(example3().dimension(), 14);

        let f = Field::new(2).unwrap();
        let free =
            CodeSpec::new(f, 3, 2, Matrix::zeros(f, 0, 2), Matrix::zeros(f, 0, 2), Matrix::zeros(f, 0, 3)).unwrap();
        assert_eq!(free.rate().exact, Ratio::from_integer(1));
        assert_eq!(free.rate().lower_bound, Ratio::from_integer(1));

        let ex = example3();
        let two = CodeSpec::two_rack(ex.h().clone(), ex.k().clone()).unwrap();
        assert_eq!(two.rate().lower_bound, Ratio::new(6, 16));
        assert_eq!(two.rate().exact, Ratio::new(6, 16));
    }

    #[test]
    fn dependent_rows_raise_exact_rate() {
        let spec = CodeSpec::from_json(r#"{"q":2,"M":2,"N":3,"H":[[1,1,0],[1,1,0]],"K":[],"G":[]}"#).unwrap();
        let r = spec.rate();
        assert_eq!(r.lower_bound, Ratio::new(2, 6));
        assert_eq!(r.exact, Ratio::new(4, 6));
        assert!(r.exact > r.lower_bound);
    }

    #[test]
    fn two_rack_codes() {
        let f = Field::new(2).unwrap();
        let h = Matrix::from_rows(f, 2, &[[1, 1]]).unwrap();
        let k = Matrix::from_rows(f, 2, &[[1, 0]]).unwrap();
        let c = TwoRackCode::new(h, k).unwrap();
        let got: HashSet<_> = c.codebook.iter().cloned().collect();
        assert_eq!(got, HashSet::from([(vec![0, 0], vec![0, 0]), (vec![1, 1], vec![1, 1])]));

        let c = TwoRackCode::new(Matrix::zeros(f, 0, 1), Matrix::zeros(f, 0, 1)).unwrap();
        assert_eq!(c.size(), 4);

        let ex = example3();
        let c = TwoRackCode::new(ex.h().clone(), ex.k().clone()).unwrap();
        assert_eq!(c.size(), 64);
        let set: HashSet<_> = c.codebook.iter().cloned().collect();
        for (x, y) in &c.codebook {
            assert!(set.contains(&(y.clone(), x.clone())));
        }
    }

    #[test]
    fn two_rack_from_spec_requires_canonical_g() {
        let ex = example3();
        let two = CodeSpec::two_rack(ex.h().clone(), ex.k().clone()).unwrap();
        assert_eq!(TwoRackCode::from_spec(&two).unwrap().size(), 64);
        assert!(TwoRackCode::from_spec(&ex).is_err());
    }

    #[test]
    fn sampler_is_deterministic_and_covers_codebook() {
        let spec = toy();
        assert_eq!(spec.random_codeword(42), spec.random_codeword(42));
        let mut s = spec.sampler(1);
        let seen: HashSet<_> = (0..10_000).map(|_| s.sample()).collect();
        assert_eq!(seen.len(), 32);
    }

    #[test]
    fn negative_entries_reduce() {
        let spec = CodeSpec::from_json(r#"{"q":3,"M":2,"N":2,"H":[[1,-1]],"K":[],"G":[[1,-1]]}"#).unwrap();
        assert_eq!(spec.h().row(0), &[1, 2]);
        assert_eq!(spec.g().row(0), &[1, 2]);
    }

    #[test]
    fn malformed_json_is_parse_error() {
        assert!(matches!(CodeSpec::from_json("{"), Err(Error::Parse(_))));
    }
}

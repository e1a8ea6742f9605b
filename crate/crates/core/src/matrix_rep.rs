//! Clifford–Jordan–Wigner embedding and matrix images of three small
//! degenerate algebras.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::linalg::Matrix;
use crate::sample::{self, SampleConfig};
use crate::{group, Blade, Error, GroupId, Multivector, Result, Scalar, Signature, SubspaceKind, SubspaceSpec};

const BUILTIN_DATA: &str = include_str!("../data/generators.txt");
const DATA_VERSION: u32 = 1;

/// Embedding of `G(p,q,r)` into `G(p+r, q+r, 0)`.
///
/// Positive generators keep their index, negative ones shift past the new
/// positive block, and the `j`-th degenerate generator becomes `f_j + g_j`
/// with `f_j` the fresh positive generator `p + j` and `g_j` the fresh
/// negative generator `p + r + q + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    source: Signature,
    target: Signature,
    images: Vec<Multivector>,
}

impl Embedding {
    pub fn cjw(source: Signature) -> Result<Self> {
        if source.is_complex() {
            return Err(Error::Unsupported("embedding of complex algebras".to_string()));
        }
        let (p, q, r) = (source.p(), source.q(), source.r());
        let target = Signature::new(p + r, q + r, 0)?;
        let gen = |a: usize| Multivector::generator(target, a);
        let mut images = Vec::with_capacity(source.n());
        for a in 1..=p {
            images.push(gen(a)?);
        }
        for j in 1..=q {
            images.push(gen(p + r + j)?);
        }
        for j in 1..=r {
            images.push(&gen(p + j)? + &gen(p + r + q + j)?);
        }
        Ok(Embedding { source, target, images })
    }

    pub fn source(&self) -> Signature {
        self.source
    }

    pub fn target(&self) -> Signature {
        self.target
    }

    /// Image of the source generator `e_a` (1-based).
    pub fn generator_image(&self, a: usize) -> Result<&Multivector> {
        self.images
            .get(a.wrapping_sub(1))
            .ok_or(Error::IndexOutOfRange { index: a, n: self.source.n() })
    }

    pub fn blade_image(&self, b: Blade) -> Multivector {
        b.indices()
            .fold(Multivector::one(self.target), |acc, a| &acc * &self.images[a - 1])
    }

    pub fn embed(&self, u: &Multivector) -> Result<Multivector> {
        if u.signature() != self.source {
            return Err(Error::SignatureMismatch {
                left: self.source,
                right: u.signature(),
            });
        }
        let mut out = Multivector::zero(self.target);
        for (b, s) in u.terms() {
            out = &out + &self.blade_image(b).scale(s);
        }
        Ok(out)
    }

    /// `φ(e_a)φ(e_b) + φ(e_b)φ(e_a) = 2η(a)δ_ab e` for all pairs.
    pub fn relations_hold(&self) -> bool {
        let n = self.source.n();
        (1..=n).all(|a| {
            (1..=n).all(|b| {
                let (x, y) = (&self.images[a - 1], &self.images[b - 1]);
                let anti = &(x * y) + &(y * x);
                let eta = if a == b { self.source.eta(a).unwrap_or(0) } else { 0 };
                anti == Multivector::scalar(self.target, Scalar::from_int(2 * i64::from(eta)))
            })
        })
    }

    /// Injectivity: the `2ⁿ` blade images are linearly independent.
    pub fn is_injective(&self) -> bool {
        let rows: Vec<Vec<Scalar>> = self
            .source
            .blades()
            .map(|b| self.blade_image(b).coefficient_vector())
            .collect();
        Matrix::from_rows(rows).is_some_and(|m| m.rank() == self.source.blade_count())
    }
}

/// The three worked examples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixExample {
    /// `G(0,0,1)` in `G(1,1,0) ≅ Mat(2)`.
    Lambda1InG110,
    /// `G(0,0,2)` in `G(2,2,0) ≅ Mat(4)`.
    Lambda2InG220,
    /// `G(1,0,1)` in `G(2,1,0) ≅ Mat(2) ⊕ Mat(2)`.
    G101InG210,
}

impl MatrixExample {
    pub const ALL: [MatrixExample; 3] = [
        MatrixExample::Lambda1InG110,
        MatrixExample::Lambda2InG220,
        MatrixExample::G101InG210,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            MatrixExample::Lambda1InG110 => "lambda1_in_G110",
            MatrixExample::Lambda2InG220 => "lambda2_in_G220",
            MatrixExample::G101InG210 => "g101_in_G210",
        }
    }

    pub fn source(&self) -> Signature {
        let (p, q, r) = match self {
            MatrixExample::Lambda1InG110 => (0, 0, 1),
            MatrixExample::Lambda2InG220 => (0, 0, 2),
            MatrixExample::G101InG210 => (1, 0, 1),
        };
        Signature::new(p, q, r).expect("valid")
    }

    /// The displayed matrix families for this example.
    pub fn patterns(&self) -> Vec<DisplayPattern> {
        let b = |idx: &[usize]| Blade::from_indices(idx).expect("valid");
        match self {
            MatrixExample::Lambda1InG110 => vec![DisplayPattern {
                name: "Lambda_1 units",
                coords: vec![b(&[]), b(&[1])],
                cells: vec![vec![1, 2], vec![0, 1]],
            }],
            // x1 multiplies e2 and x2 multiplies e1: the only labeling under
            // which the displayed family is the image of a homomorphism.
            MatrixExample::Lambda2InG220 => vec![
                DisplayPattern {
                    name: "Lambda_2 units",
                    coords: vec![b(&[]), b(&[2]), b(&[1]), b(&[1, 2])],
                    cells: vec![vec![1, 2, 3, 4], vec![0, 1, 0, -3], vec![0, 0, 1, 2], vec![0, 0, 0, 1]],
                },
                DisplayPattern {
                    name: "even Lambda_2 units",
                    coords: vec![b(&[]), b(&[2]), b(&[1]), b(&[1, 2])],
                    cells: vec![vec![1, 0, 0, 4], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
                },
            ],
            MatrixExample::G101InG210 => vec![
                DisplayPattern {
                    name: "even branch",
                    coords: vec![b(&[]), b(&[1]), b(&[2]), b(&[1, 2])],
                    cells: vec![vec![1, 4, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 4], vec![0, 0, 0, 1]],
                },
                DisplayPattern {
                    name: "odd branch",
                    coords: vec![b(&[]), b(&[1]), b(&[2]), b(&[1, 2])],
                    cells: vec![vec![2, 3, 0, 0], vec![0, -2, 0, 0], vec![0, 0, -2, -3], vec![0, 0, 0, 2]],
                },
            ],
        }
    }
}

impl fmt::Display for MatrixExample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for MatrixExample {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MatrixExample::ALL
            .into_iter()
            .find(|e| e.id() == s)
            .ok_or_else(|| Error::MatrixData(format!("unknown example id {s:?}")))
    }
}

/// A matrix family: `cells[i][j] = ±(k+1)` means entry `±x_k`, 0 means a
/// zero entry; `x_k` is the coefficient of `coords[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisplayPattern {
    pub name: &'static str,
    pub coords: Vec<Blade>,
    pub cells: Vec<Vec<i8>>,
}

impl DisplayPattern {
    /// The matrix the family takes at `x_k = 1` and every other `x = 0`.
    pub fn coordinate_matrix(&self, k: usize) -> Matrix {
        let size = self.cells.len();
        let mut m = Matrix::zeros(size, size);
        for (i, row) in self.cells.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c.unsigned_abs() as usize == k + 1 {
                    m.set(i, j, Scalar::from_int(i64::from(c.signum())));
                }
            }
        }
        m
    }

    /// Indices `k` that actually appear in the pattern.
    pub fn used_coords(&self) -> Vec<usize> {
        (0..self.coords.len())
            .filter(|k| self.cells.iter().flatten().any(|c| c.unsigned_abs() as usize == k + 1))
            .collect()
    }

    /// Does `m` belong to the family (for some values of the used `x_k`)?
    pub fn matches(&self, m: &Matrix) -> bool {
        let size = self.cells.len();
        if m.rows() != size || m.cols() != size {
            return false;
        }
        let mut values: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, row) in self.cells.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                let v = m.get(i, j);
                if c == 0 {
                    if !v.is_zero() {
                        return false;
                    }
                    continue;
                }
                let k = c.unsigned_abs() as usize - 1;
                let x = if c > 0 { v.clone() } else { -v };
                match values.get(&k) {
                    Some(prev) if *prev != x => return false,
                    Some(_) => {}
                    None => {
                        values.insert(k, x);
                    }
                }
            }
        }
        true
    }
}

/// Fixed exact generator matrices for one example's target algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    example: MatrixExample,
    embedding: Embedding,
    generators: Vec<Matrix>,
}

impl MatrixRep {
    /// The representation stored in the crate's data file.
    pub fn builtin(example: MatrixExample) -> Result<Self> {
        MatrixRep::from_data(BUILTIN_DATA, example)
    }

    /// Parses the line format of the data file and extracts one example.
    pub fn from_data(text: &str, example: MatrixExample) -> Result<Self> {
        let data = parse_data(text)?;
        let (source, size, gens) = data
            .get(example.id())
            .ok_or_else(|| Error::MatrixData(format!("no data for {example}")))?;
        if *source != example.source() {
            return Err(Error::MatrixData(format!(
                "{example}: data says source {source}, expected {}",
                example.source()
            )));
        }
        let embedding = Embedding::cjw(*source)?;
        let nt = embedding.target().n();
        let mut generators = Vec::with_capacity(nt);
        for a in 1..=nt {
            let entries = gens
                .get(&a)
                .ok_or_else(|| Error::MatrixData(format!("{example}: missing generator {a}")))?;
            let rows = entries.chunks(*size).map(<[Scalar]>::to_vec).collect();
            generators.push(Matrix::from_rows(rows).expect("chunked evenly"));
        }
        if gens.len() != nt {
            return Err(Error::MatrixData(format!(
                "{example}: {} generators given, target has {nt}",
                gens.len()
            )));
        }
        Ok(MatrixRep {
            example,
            embedding,
            generators,
        })
    }

    pub fn example(&self) -> MatrixExample {
        self.example
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn generator_matrix(&self, a: usize) -> Option<&Matrix> {
        self.generators.get(a.wrapping_sub(1))
    }

    pub fn size(&self) -> usize {
        self.generators[0].rows()
    }

    /// `M_a M_b + M_b M_a = 2η(a)δ_ab I` in the target algebra.
    pub fn clifford_relations_hold(&self) -> bool {
        let target = self.embedding.target();
        let id = Matrix::identity(self.size());
        let n = target.n();
        (1..=n).all(|a| {
            (1..=n).all(|b| {
                let (x, y) = (&self.generators[a - 1], &self.generators[b - 1]);
                let anti = (x * y).add(&(y * x)).expect("square");
                let eta = if a == b { target.eta(a).unwrap_or(0) } else { 0 };
                anti == id.scale(&Scalar::from_int(2 * i64::from(eta)))
            })
        })
    }

    /// Matrix of an element of the target algebra.
    pub fn represent_target(&self, u: &Multivector) -> Result<Matrix> {
        if u.signature() != self.embedding.target() {
            return Err(Error::SignatureMismatch {
                left: self.embedding.target(),
                right: u.signature(),
            });
        }
        let size = self.size();
        let mut out = Matrix::zeros(size, size);
        for (b, s) in u.terms() {
            let m = b
                .indices()
                .fold(Matrix::identity(size), |acc, a| &acc * &self.generators[a - 1]);
            out = out.add(&m.scale(s)).expect("square");
        }
        Ok(out)
    }

    /// Matrix of an element of the source algebra: embed, then represent.
    pub fn represent(&self, u: &Multivector) -> Result<Matrix> {
        self.represent_target(&self.embedding.embed(u)?)
    }
}

type ExampleData = (Signature, usize, BTreeMap<usize, Vec<Scalar>>);

fn parse_data(text: &str) -> Result<BTreeMap<String, ExampleData>> {
    let mut version = None;
    let mut out: BTreeMap<String, ExampleData> = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::MatrixData(format!("line {}: {msg}", lineno + 1));
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "version" => {
                let v: u32 = fields
                    .get(1)
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| err("bad version line".into()))?;
                if v != DATA_VERSION {
                    return Err(err(format!("unsupported version {v}")));
                }
                version = Some(v);
            }
            "example" => {
                let [_, id, sig, size] = fields[..] else {
                    return Err(err("expected: example <id> <p,q,r> <size>".into()));
                };
                let sig: Signature = sig.parse().map_err(|e: Error| err(e.to_string()))?;
                let size: usize = size.parse().map_err(|_| err(format!("bad size {size:?}")))?;
                out.insert(id.to_string(), (sig, size, BTreeMap::new()));
            }
            id => {
                if version.is_none() {
                    return Err(err("data before version line".into()));
                }
                let (_, size, gens) = out
                    .get_mut(id)
                    .ok_or_else(|| err(format!("generator for undeclared example {id:?}")))?;
                let a: usize = fields
                    .get(1)
                    .and_then(|a| a.parse().ok())
                    .ok_or_else(|| err("bad generator index".into()))?;
                let entries = fields[2..]
                    .iter()
                    .map(|f| {
                        f.parse::<BigRational>()
                            .map(Scalar::real)
                            .map_err(|_| err(format!("bad entry {f:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if entries.len() != *size * *size {
                    return Err(err(format!(
                        "{} entries for a {size}x{size} matrix",
                        entries.len()
                    )));
                }
                if gens.insert(a, entries).is_some() {
                    return Err(err(format!("duplicate generator {a}")));
                }
            }
        }
    }
    if version.is_none() {
        return Err(Error::MatrixData("missing version line".into()));
    }
    Ok(out)
}

/// One named pass/fail line of a structural check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralItem {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralReport {
    pub example: MatrixExample,
    pub items: Vec<StructuralItem>,
}

impl StructuralReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

fn is_upper_triangular(m: &Matrix) -> bool {
    (0..m.rows()).all(|i| (0..i).all(|j| m.get(i, j).is_zero()))
}

/// Unipotent matrices of the form `[[1,a,b,c],[0,1,0,d],[0,0,1,f],[0,0,0,1]]`.
pub fn in_heis4(m: &Matrix) -> bool {
    m.rows() == 4
        && m.cols() == 4
        && is_upper_triangular(m)
        && (0..4).all(|i| m.get(i, i).is_one())
        && m.get(1, 2).is_zero()
}

/// Compares the example with its displayed matrix families.
///
/// Exact part: each pattern coordinate blade maps to the pattern's
/// coordinate matrix, so by linearity the whole family is reproduced.
/// Sampled part: unit images lie in the family, are upper triangular and
/// nonsingular; elements are invertible iff their images are; products map
/// to products; unipotent images fall inside the `Heis₄` pattern (4×4
/// examples) or equal `SUT(2)` (2×2 example).
pub fn structural_check<R: Rng + ?Sized>(
    example: MatrixExample,
    rng: &mut R,
    samples: usize,
    cfg: SampleConfig,
) -> Result<StructuralReport> {
    let rep = MatrixRep::builtin(example)?;
    let src = example.source();
    let mut items = Vec::new();
    let mut push = |name: String, passed: bool| items.push(StructuralItem { name, passed });

    push("generator matrices satisfy the Clifford relations".into(), rep.clifford_relations_hold());
    push(
        "embedding respects the generator relations".into(),
        rep.embedding().relations_hold(),
    );
    push("embedding is injective".into(), rep.embedding().is_injective());

    let patterns = example.patterns();
    for pat in &patterns {
        let mut exact = true;
        for k in pat.used_coords() {
            let image = rep.represent(&Multivector::blade(src, pat.coords[k])?)?;
            exact &= image == pat.coordinate_matrix(k);
        }
        push(format!("{} reproduce the displayed matrices", pat.name), exact);
    }

    // Which sampled elements should land in which pattern.
    let mut in_family = true;
    let mut triangular = true;
    let mut transport = true;
    let mut homomorphism = true;
    let mut unipotent = true;
    for _ in 0..samples {
        let (t, family): (Multivector, &DisplayPattern) = match example {
            MatrixExample::Lambda1InG110 => (sample::random_full_unit(src, rng, cfg)?, &patterns[0]),
            MatrixExample::Lambda2InG220 => {
                if rng.gen_bool(0.5) {
                    (sample::random_full_unit(src, rng, cfg)?, &patterns[0])
                } else {
                    let even = SubspaceSpec::new(src, SubspaceKind::Parity(0))?;
                    (sample::random_unit(&even, rng, cfg)?, &patterns[1])
                }
            }
            MatrixExample::G101InG210 => {
                let t = group::sample_group_element(GroupId::Ppm, src, rng, cfg)?;
                let branch = if t.parity() == Some(0) { &patterns[0] } else { &patterns[1] };
                (t, branch)
            }
        };
        let m = rep.represent(&t)?;
        in_family &= family.matches(&m);
        triangular &= is_upper_triangular(&m) && m.is_nonsingular();

        let u = sample::random_with(src, rng, cfg.coeff_bound, |_| true);
        let u = if rng.gen_bool(0.3) { u.filter(|b| b.mask() != 0) } else { u };
        let mu = rep.represent(&u)?;
        transport &= u.is_invertible() == mu.is_nonsingular();
        let v = sample::random_with(src, rng, cfg.coeff_bound, |_| true);
        homomorphism &= rep.represent(&(&u * &v))? == &mu * &rep.represent(&v)?;

        // Unipotent: unit scalar part.
        let x = sample::random_with(src, rng, cfg.coeff_bound, |b| b.mask() != 0);
        let n = rep.represent(&(&Multivector::one(src) + &x))?;
        unipotent &= match example {
            MatrixExample::Lambda1InG110 => {
                n.get(0, 0).is_one() && n.get(1, 1).is_one() && n.get(1, 0).is_zero()
            }
            MatrixExample::Lambda2InG220 => in_heis4(&n),
            // Only the even branch has unipotent images here.
            MatrixExample::G101InG210 => {
                let even = (&Multivector::one(src) + &x).even_part();
                in_heis4(&rep.represent(&even)?)
            }
        };
    }
    let family_name = match example {
        MatrixExample::G101InG210 => "P_pm(1,0,1) images match their branch pattern",
        _ => "unit images match the displayed family",
    };
    push(family_name.into(), in_family);
    push("unit images are nonsingular upper triangular".into(), triangular);
    push("invertible iff image nonsingular".into(), transport);
    push("represent is multiplicative".into(), homomorphism);
    let uni_name = match example {
        MatrixExample::Lambda1InG110 => "unipotent images lie in SUT(2)",
        _ => "unipotent images lie in the Heis_4 pattern",
    };
    push(uni_name.into(), unipotent);
    if example == MatrixExample::Lambda1InG110 {
        // Every [[1,x],[0,1]] is hit, by e + x e1.
        let x = Scalar::from_int(rng.gen_range(-cfg.coeff_bound..=cfg.coeff_bound));
        let t = Multivector::from_terms(src, [(Blade::IDENTITY, Scalar::one()), (Blade::from_mask(1), x.clone())])?;
        let want = Matrix::from_rows(vec![vec![Scalar::one(), x], vec![Scalar::zero(), Scalar::one()]]).expect("2x2");
        push("SUT(2) is contained in the image".into(), rep.represent(&t)? == want);
    }
    Ok(StructuralReport { example, items })
}

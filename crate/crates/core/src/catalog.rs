//! Data for the sixteen extremal rational elliptic surfaces: fiber
//! configurations, Mordell-Weil groups, cubic pencils, labeled negative
//! curves, and the reference Cox ring presentations.

use crate::linalg::in_integer_span;
use crate::picard::DivisorClass;
use coxsurf_algebra::{Field, Poly, PolyError, PolyRing, Rational, RingRef};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Surface names in the order of the reference tables.
pub const SURFACES: [&str; 16] = [
    "X_22", "X_211", "X_411", "X_9111", "X_33", "X_321", "X_8211", "X_44", "X_431", "X_222", "X_141", "X_6321",
    "X_11(a)", "X_5511", "X_4422", "X_3333",
];

const BUNDLED: [(&str, &str); 16] = [
    ("X_22", include_str!("../data/X_22.surf")),
    ("X_211", include_str!("../data/X_211.surf")),
    ("X_411", include_str!("../data/X_411.surf")),
    ("X_9111", include_str!("../data/X_9111.surf")),
    ("X_33", include_str!("../data/X_33.surf")),
    ("X_321", include_str!("../data/X_321.surf")),
    ("X_8211", include_str!("../data/X_8211.surf")),
    ("X_44", include_str!("../data/X_44.surf")),
    ("X_431", include_str!("../data/X_431.surf")),
    ("X_222", include_str!("../data/X_222.surf")),
    ("X_141", include_str!("../data/X_141.surf")),
    ("X_6321", include_str!("../data/X_6321.surf")),
    ("X_11(a)", include_str!("../data/X_11a.surf")),
    ("X_5511", include_str!("../data/X_5511.surf")),
    ("X_4422", include_str!("../data/X_4422.surf")),
    ("X_3333", include_str!("../data/X_3333.surf")),
];

pub const DATA_ENV: &str = "COXSURF_DATA";

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown surface `{0}`")]
    UnknownSurface(String),
    #[error("{file}:{line}: {msg}")]
    Malformed { file: String, line: usize, msg: String },
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("polynomial: {0}")]
    Poly(#[from] PolyError),
}

/// Resolves user spellings such as `X_11a` or `x_411` to a canonical name.
pub fn canonical_name(name: &str) -> Option<&'static str> {
    let n = name.trim().replace("(a)", "").replace('a', "");
    let n = n.strip_prefix("X_").or_else(|| n.strip_prefix("x_")).or_else(|| n.strip_prefix('X')).unwrap_or(&n).to_string();
    SURFACES.iter().copied().find(|s| s.trim_start_matches("X_").replace("(a)", "") == n)
}

pub fn file_name(name: &str) -> String {
    format!("{}.surf", name.replace("(a)", "a"))
}

// ---------------------------------------------------------------------------
// Kodaira fibers

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FiberType {
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IIStar,
    IIIStar,
    IVStar,
}

impl FromStr for FiberType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "II" => FiberType::II,
            "III" => FiberType::III,
            "IV" => FiberType::IV,
            "II*" => FiberType::IIStar,
            "III*" => FiberType::IIIStar,
            "IV*" => FiberType::IVStar,
            _ => {
                let rest = s.strip_prefix('I').ok_or_else(|| format!("bad fiber type `{s}`"))?;
                if let Some(n) = rest.strip_suffix('*') {
                    FiberType::IStar(n.parse().map_err(|_| format!("bad fiber type `{s}`"))?)
                } else {
                    let n: u32 = rest.parse().map_err(|_| format!("bad fiber type `{s}`"))?;
                    if n == 0 {
                        return Err("I0 is smooth".into());
                    }
                    FiberType::I(n)
                }
            }
        })
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberType::I(n) => write!(f, "I{n}"),
            FiberType::IStar(n) => write!(f, "I{n}*"),
            FiberType::II => write!(f, "II"),
            FiberType::III => write!(f, "III"),
            FiberType::IV => write!(f, "IV"),
            FiberType::IIStar => write!(f, "II*"),
            FiberType::IIIStar => write!(f, "III*"),
            FiberType::IVStar => write!(f, "IV*"),
        }
    }
}

/// Component graph of a reducible fiber: multiplicity of each component
/// and the intersection numbers between distinct components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberGraph {
    pub multiplicities: Vec<i64>,
    pub edges: Vec<(usize, usize, i64)>,
}

impl FiberGraph {
    pub fn len(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    pub fn meeting(&self, a: usize, b: usize) -> i64 {
        if a == b {
            return -2;
        }
        self.edges
            .iter()
            .find(|&&(x, y, _)| (x, y) == (a, b) || (x, y) == (b, a))
            .map_or(0, |e| e.2)
    }
}

impl FiberType {
    pub fn euler_number(&self) -> u32 {
        match self {
            FiberType::I(n) => *n,
            FiberType::IStar(n) => n + 6,
            FiberType::II => 2,
            FiberType::III => 3,
            FiberType::IV => 4,
            FiberType::IIStar => 10,
            FiberType::IIIStar => 9,
            FiberType::IVStar => 8,
        }
    }

    /// Number of (-2)-curves in the fiber; irreducible fibers have none.
    pub fn component_count(&self) -> usize {
        self.graph().len()
    }

    pub fn is_reducible(&self) -> bool {
        self.component_count() > 0
    }

    pub fn graph(&self) -> FiberGraph {
        let chain = |pairs: &[(usize, usize)]| pairs.iter().map(|&(a, b)| (a, b, 1)).collect::<Vec<_>>();
        match *self {
            FiberType::I(1) | FiberType::II => FiberGraph { multiplicities: vec![], edges: vec![] },
            FiberType::I(2) | FiberType::III => FiberGraph { multiplicities: vec![1, 1], edges: vec![(0, 1, 2)] },
            FiberType::IV => FiberGraph { multiplicities: vec![1, 1, 1], edges: chain(&[(0, 1), (1, 2), (0, 2)]) },
            FiberType::I(n) => {
                let n = n as usize;
                FiberGraph { multiplicities: vec![1; n], edges: (0..n).map(|i| (i, (i + 1) % n, 1)).collect() }
            }
            FiberType::IStar(n) => {
                let n = n as usize;
                let mut pairs = vec![(0, 2), (1, 2)];
                pairs.extend((2..n + 2).map(|i| (i, i + 1)));
                pairs.push((n + 2, n + 3));
                pairs.push((n + 2, n + 4));
                let mut m = vec![1, 1];
                m.extend(std::iter::repeat_n(2, n + 1));
                m.extend([1, 1]);
                FiberGraph { multiplicities: m, edges: chain(&pairs) }
            }
            FiberType::IIStar => FiberGraph {
                multiplicities: vec![1, 2, 3, 4, 5, 6, 4, 2, 3],
                edges: chain(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)]),
            },
            FiberType::IIIStar => FiberGraph {
                multiplicities: vec![1, 2, 3, 4, 3, 2, 1, 2],
                edges: chain(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)]),
            },
            FiberType::IVStar => FiberGraph {
                multiplicities: vec![1, 2, 3, 2, 1, 2, 1],
                edges: chain(&[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]),
            },
        }
    }
}

// ---------------------------------------------------------------------------
// Mordell-Weil group

/// A finite abelian group `Z/n` or `Z/n + Z/m` with the section labels
/// `P_j` (multiples of `P_1`), `Q_k` and `P_j+Q_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MordellWeil {
    pub invariants: Vec<u32>,
}

impl MordellWeil {
    pub fn order(&self) -> usize {
        self.invariants.iter().map(|&n| n as usize).product()
    }

    fn dims(&self) -> (u32, u32) {
        (self.invariants.first().copied().unwrap_or(1), self.invariants.get(1).copied().unwrap_or(1))
    }

    pub fn elements(&self) -> Vec<(u32, u32)> {
        let (n, m) = self.dims();
        (0..m).flat_map(|k| (0..n).map(move |j| (j, k))).collect()
    }

    pub fn label(&self, (j, k): (u32, u32)) -> String {
        match (j, k) {
            (j, 0) => format!("P{j}"),
            (0, k) => format!("Q{k}"),
            (j, k) => format!("P{j}+Q{k}"),
        }
    }

    pub fn parse_label(&self, s: &str) -> Option<(u32, u32)> {
        let (n, m) = self.dims();
        let mut j = 0;
        let mut k = 0;
        for part in s.split('+') {
            if let Some(x) = part.strip_prefix('P') {
                j = x.parse().ok()?;
            } else {
                let x = part.strip_prefix('Q')?;
                k = x.parse().ok()?;
            }
        }
        (j < n && k < m && self.label((j, k)) == s).then_some((j, k))
    }

    pub fn add(&self, a: (u32, u32), b: (u32, u32)) -> (u32, u32) {
        let (n, m) = self.dims();
        ((a.0 + b.0) % n, (a.1 + b.1) % m)
    }

    pub fn element_order(&self, a: (u32, u32)) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != (0, 0) {
            x = self.add(x, a);
            k += 1;
        }
        k
    }
}

impl fmt::Display for MordellWeil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.invariants.iter().filter(|&&n| n > 1).map(|n| format!("Z/{n}")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

// ---------------------------------------------------------------------------
// Descriptor

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FieldTag {
    Rational,
    Cyclotomic3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CurveKind {
    Section,
    /// Component `index` of the `fiber`-th reducible fiber (both from 0).
    Component { fiber: usize, index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Curve {
    pub label: String,
    pub class: DivisorClass,
    pub kind: CurveKind,
}

impl Curve {
    pub fn is_section(&self) -> bool {
        self.kind == CurveKind::Section
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Incidence {
    pub section: String,
    pub component: String,
    pub value: i64,
}

/// How a reference generator is realized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ReferenceKind {
    Curve(String),
    Conic,
    Fiber,
    TypeIv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SectionSpec {
    /// The generator is an exceptional variable of the plane blow-up.
    Exceptional,
    /// Plane polynomial cutting the image of the curve.
    Plane(String),
    Unknown,
}

/// One column of the reference presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReferenceGenerator {
    pub var: String,
    pub degree: DivisorClass,
    pub kind: ReferenceKind,
    pub section: SectionSpec,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurfaceDescriptor {
    pub name: String,
    pub fibers: Vec<FiberType>,
    pub mw: MordellWeil,
    pub field: FieldTag,
    #[serde(skip)]
    pub parameter: Option<(String, Rational)>,
    pub pencil: (String, String),
    pub curves: Vec<Curve>,
    pub table3: Vec<Incidence>,
    pub incidences: Vec<Incidence>,
    pub reference: Vec<ReferenceGenerator>,
    pub relations: Vec<String>,
}

fn parse_class(s: &str) -> Option<DivisorClass> {
    let inner = s.trim().strip_prefix('[')?.strip_suffix(']')?;
    let v: Result<Vec<i64>, _> = inner.split(',').map(|x| x.trim().parse::<i64>()).collect();
    DivisorClass::from_slice(&v.ok()?)
}

/// Replaces the identifier `name` by `(value)` in an expression.
pub fn bind_parameter(text: &str, name: &str, value: &Rational) -> String {
    let mut out = String::with_capacity(text.len());
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_ascii_alphabetic() || chars[i] == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let ident: String = chars[start..i].iter().collect();
            if ident == name {
                out.push_str(&format!("({value})"));
            } else {
                out.push_str(&ident);
            }
        } else {
            out.push(chars[i]);
            i += 1;
        }
    }
    out
}

impl SurfaceDescriptor {
    pub fn parse(file: &str, text: &str) -> Result<Self, CatalogError> {
        let err = |line: usize, msg: String| CatalogError::Malformed { file: file.to_string(), line, msg };
        let mut header: BTreeMap<String, (usize, String)> = BTreeMap::new();
        let mut sections: BTreeMap<String, Vec<(usize, String)>> = BTreeMap::new();
        let mut current: Option<String> = None;
        for (no, raw) in text.lines().enumerate() {
            let no = no + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(sec) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                current = Some(sec.to_string());
                sections.entry(sec.to_string()).or_default();
                continue;
            }
            match &current {
                Some(sec) => sections.get_mut(sec).unwrap().push((no, line.to_string())),
                None => {
                    let (k, v) = line.split_once(':').ok_or_else(|| err(no, "expected `key: value`".into()))?;
                    header.insert(k.trim().to_string(), (no, v.trim().to_string()));
                }
            }
        }
        let get = |k: &str| header.get(k).cloned().ok_or_else(|| err(0, format!("missing `{k}`")));
        let name = get("name")?.1;
        let (fl, fibers_txt) = get("fibers")?;
        let fibers = fibers_txt
            .split_whitespace()
            .map(|t| t.parse::<FiberType>().map_err(|m| err(fl, m)))
            .collect::<Result<Vec<_>, _>>()?;
        let (ml, mw_txt) = get("mw")?;
        let invariants = mw_txt
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| err(ml, format!("bad group order `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        let (fl2, field_txt) = get("field")?;
        let field = match field_txt.as_str() {
            "QQ" => FieldTag::Rational,
            "QQ(e)" => FieldTag::Cyclotomic3,
            other => return Err(err(fl2, format!("unknown field `{other}`"))),
        };
        let parameter = match header.get("parameter") {
            None => None,
            Some((pl, txt)) => {
                let (k, v) = txt.split_once('=').ok_or_else(|| err(*pl, "expected `name = value`".into()))?;
                let v = v.trim().parse::<Rational>().map_err(|e| err(*pl, e.to_string()))?;
                Some((k.trim().to_string(), v))
            }
        };
        let (pl, pencil_txt) = get("pencil")?;
        let (a, b) = pencil_txt.split_once(';').ok_or_else(|| err(pl, "pencil needs `A ; B`".into()))?;
        let pencil = (a.trim().to_string(), b.trim().to_string());

        let reducible: Vec<FiberType> = fibers.iter().copied().filter(|f| f.is_reducible()).collect();
        let mw = MordellWeil { invariants };
        let mut curves = Vec::new();
        for (no, line) in sections.get("curves").cloned().unwrap_or_default() {
            let (label, cls) = line.split_once(':').ok_or_else(|| err(no, "expected `label : [..]`".into()))?;
            let label = label.trim().to_string();
            let class = parse_class(cls).ok_or_else(|| err(no, "expected ten integers".into()))?;
            let kind = if let Some(rest) = label.strip_prefix("Th") {
                let (i, j) = rest.split_once('.').ok_or_else(|| err(no, format!("bad component label `{label}`")))?;
                let index: usize = i.parse().map_err(|_| err(no, format!("bad component label `{label}`")))?;
                let fiber: usize = j.parse().map_err(|_| err(no, format!("bad component label `{label}`")))?;
                if fiber == 0 || fiber > reducible.len() || index >= reducible[fiber - 1].component_count() {
                    return Err(err(no, format!("component `{label}` does not exist")));
                }
                CurveKind::Component { fiber: fiber - 1, index }
            } else {
                if mw.parse_label(&label).is_none() {
                    return Err(err(no, format!("bad section label `{label}`")));
                }
                CurveKind::Section
            };
            curves.push(Curve { label, class, kind });
        }
        let parse_inc = |sec: &str| -> Result<Vec<Incidence>, CatalogError> {
            let mut out = Vec::new();
            for (no, line) in sections.get(sec).cloned().unwrap_or_default() {
                let t: Vec<&str> = line.split_whitespace().collect();
                if t.len() != 3 {
                    return Err(err(no, "expected `section component value`".into()));
                }
                let value = t[2].parse().map_err(|_| err(no, "bad intersection number".into()))?;
                out.push(Incidence { section: t[0].into(), component: t[1].into(), value });
            }
            Ok(out)
        };
        let table3 = parse_inc("table3")?;
        let incidences = parse_inc("incidences")?;
        let mut reference = Vec::new();
        for (no, line) in sections.get("generators").cloned().unwrap_or_default() {
            let (var, rest) = line.split_once(':').ok_or_else(|| err(no, "expected `T : [..] ; kind ; section`".into()))?;
            let parts: Vec<&str> = rest.split(';').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(err(no, "expected three `;`-separated fields".into()));
            }
            let degree = parse_class(parts[0]).ok_or_else(|| err(no, "expected ten integers".into()))?;
            let kind = match parts[1] {
                "conic" => ReferenceKind::Conic,
                "fiber" => ReferenceKind::Fiber,
                "type4" => ReferenceKind::TypeIv,
                k => match k.strip_prefix("curve ") {
                    Some(l) => ReferenceKind::Curve(l.trim().to_string()),
                    None => return Err(err(no, format!("unknown generator kind `{k}`"))),
                },
            };
            let section = match parts[2] {
                "S" => SectionSpec::Exceptional,
                "?" => SectionSpec::Unknown,
                p => SectionSpec::Plane(p.to_string()),
            };
            reference.push(ReferenceGenerator { var: var.trim().to_string(), degree, kind, section });
        }
        let relations = sections.get("relations").cloned().unwrap_or_default().into_iter().map(|(_, l)| l).collect();
        Ok(SurfaceDescriptor { name, fibers, mw, field, parameter, pencil, curves, table3, incidences, reference, relations })
    }

    pub fn reducible_fibers(&self) -> Vec<FiberType> {
        self.fibers.iter().copied().filter(|f| f.is_reducible()).collect()
    }

    pub fn curve(&self, label: &str) -> Option<&Curve> {
        self.curves.iter().find(|c| c.label == label)
    }

    pub fn class_of(&self, label: &str) -> Option<DivisorClass> {
        self.curve(label).map(|c| c.class)
    }

    pub fn sections(&self) -> impl Iterator<Item = &Curve> {
        self.curves.iter().filter(|c| c.is_section())
    }

    pub fn components(&self) -> impl Iterator<Item = &Curve> {
        self.curves.iter().filter(|c| !c.is_section())
    }

    pub fn component(&self, fiber: usize, index: usize) -> Option<&Curve> {
        self.curves.iter().find(|c| c.kind == CurveKind::Component { fiber, index })
    }

    pub fn labeled_classes(&self) -> Vec<(String, DivisorClass)> {
        self.curves.iter().map(|c| (c.label.clone(), c.class)).collect()
    }

    /// Expression text with the surface parameter bound to its value.
    pub fn bind(&self, text: &str) -> String {
        match &self.parameter {
            Some((name, value)) => bind_parameter(text, name, value),
            None => text.to_string(),
        }
    }

    pub fn plane_ring() -> RingRef {
        PolyRing::new(&["x0", "x1", "x2"], coxsurf_algebra::MonomialOrder::GrevLex)
    }

    /// The cubic `A + t B` of the pencil; `None` stands for `t = infinity`.
    pub fn pencil_member<F: Field>(&self, t: Option<F>) -> Result<Poly<F>, CatalogError> {
        let ring = Self::plane_ring();
        let a = Poly::parse(&ring, &self.bind(&self.pencil.0))?;
        let b = Poly::parse(&ring, &self.bind(&self.pencil.1))?;
        Ok(match t {
            None => b,
            Some(t) => a.add(&b.scale(&t)),
        })
    }

    /// Ring with the reference variable names, in reference order.
    pub fn reference_ring(&self, order: coxsurf_algebra::MonomialOrder) -> RingRef {
        let names: Vec<&str> = self.reference.iter().map(|g| g.var.as_str()).collect();
        PolyRing::new(&names, order)
    }

    pub fn reference_relations<F: Field>(&self, ring: &RingRef) -> Result<Vec<Poly<F>>, CatalogError> {
        self.relations.iter().map(|r| Ok(Poly::parse(ring, &self.bind(r))?)).collect()
    }

    pub fn reference_degrees(&self) -> Vec<Vec<i64>> {
        self.reference.iter().map(|g| g.degree.0.to_vec()).collect()
    }
}

// ---------------------------------------------------------------------------
// Validation

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub failures: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub surface: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks.iter().flat_map(|c| c.failures.iter().map(move |f| format!("{}: {f}", c.name))).collect()
    }
}

/// Class of the section `a + b` in the Mordell-Weil group, found as the
/// unique section congruent to `a + b - P0` modulo the trivial lattice.
pub fn mw_sum(s: &SurfaceDescriptor, a: &DivisorClass, b: &DivisorClass) -> Vec<String> {
    let Some(p0) = s.class_of("P0") else { return Vec::new() };
    let mut triv: Vec<Vec<i64>> = vec![p0.0.to_vec(), DivisorClass::fiber().0.to_vec()];
    triv.extend(s.components().map(|c| c.class.0.to_vec()));
    let target = *a + *b - p0;
    s.sections()
        .filter(|c| in_integer_span(&triv, &(c.class - target).0))
        .map(|c| c.label.clone())
        .collect()
}

pub fn validate_surface(s: &SurfaceDescriptor) -> ValidationReport {
    let mut checks = Vec::new();
    let reducible = s.reducible_fibers();
    let minus_k = DivisorClass::fiber();

    let mut f = Vec::new();
    let euler: u32 = s.fibers.iter().map(FiberType::euler_number).sum();
    if euler != 12 {
        f.push(format!("Euler numbers sum to {euler}"));
    }
    checks.push(Check { name: "euler", failures: f });

    // (a) weighted fiber sums
    let mut f = Vec::new();
    for (j, ft) in reducible.iter().enumerate() {
        let g = ft.graph();
        let mut sum = DivisorClass::ZERO;
        for (i, &m) in g.multiplicities.iter().enumerate() {
            match s.component(j, i) {
                Some(c) => sum = sum + c.class * m,
                None => f.push(format!("fiber {} ({ft}) lacks component {i}", j + 1)),
            }
        }
        if sum != minus_k {
            f.push(format!("fiber {} ({ft}) sums to {sum}", j + 1));
        }
    }
    checks.push(Check { name: "fiber-sum", failures: f });

    // (b) self-intersections and anticanonical degrees
    let mut f = Vec::new();
    for c in &s.curves {
        let (sq, kd) = if c.is_section() { (-1, 1) } else { (-2, 0) };
        if c.class.square() != sq || c.class.anticanonical_degree() != kd {
            f.push(format!("{} has square {} and -K degree {}", c.label, c.class.square(), c.class.anticanonical_degree()));
        }
    }
    checks.push(Check { name: "squares", failures: f });

    // fiber graphs and orthogonality of distinct fibers
    let mut f = Vec::new();
    let comps: Vec<&Curve> = s.components().collect();
    for a in &comps {
        for b in &comps {
            if a.label >= b.label {
                continue;
            }
            let (CurveKind::Component { fiber: fa, index: ia }, CurveKind::Component { fiber: fb, index: ib }) = (&a.kind, &b.kind) else {
                continue;
            };
            let expect = if fa == fb { reducible[*fa].graph().meeting(*ia, *ib) } else { 0 };
            let got = a.class.dot(&b.class);
            if got != expect {
                f.push(format!("{}.{} = {got}, expected {expect}", a.label, b.label));
            }
        }
    }
    checks.push(Check { name: "fiber-graph", failures: f });

    // (c) the printed incidences
    let mut f = Vec::new();
    for inc in &s.table3 {
        match (s.class_of(&inc.section), s.class_of(&inc.component)) {
            (Some(p), Some(t)) if p.dot(&t) == inc.value => {}
            (Some(p), Some(t)) => f.push(format!("{}.{} = {}, expected {}", inc.section, inc.component, p.dot(&t), inc.value)),
            _ => f.push(format!("unknown curve in {} {}", inc.section, inc.component)),
        }
    }
    checks.push(Check { name: "table3", failures: f });

    // (d) complete incidence list; each section meets one simple component per fiber
    let mut f = Vec::new();
    let listed: BTreeSet<(String, String, i64)> =
        s.incidences.iter().map(|i| (i.section.clone(), i.component.clone(), i.value)).collect();
    let mut actual = BTreeSet::new();
    for p in s.sections() {
        for (j, ft) in reducible.iter().enumerate() {
            let g = ft.graph();
            let mut hits = 0;
            for (i, &m) in g.multiplicities.iter().enumerate() {
                let Some(c) = s.component(j, i) else { continue };
                let v = p.class.dot(&c.class);
                if v != 0 {
                    actual.insert((p.label.clone(), c.label.clone(), v));
                    if v != 1 || m != 1 {
                        f.push(format!("{}.{} = {v} on a component of multiplicity {m}", p.label, c.label));
                    }
                    hits += 1;
                }
            }
            if hits != 1 {
                f.push(format!("{} meets {hits} components of fiber {}", p.label, j + 1));
            }
        }
    }
    for x in listed.symmetric_difference(&actual) {
        f.push(format!("incidence {} {} {} listed/actual mismatch", x.0, x.1, x.2));
    }
    checks.push(Check { name: "incidences", failures: f });

    // (e) sections pairwise disjoint
    let mut f = Vec::new();
    let secs: Vec<&Curve> = s.sections().collect();
    for (i, a) in secs.iter().enumerate() {
        for b in &secs[i + 1..] {
            let v = a.class.dot(&b.class);
            if v != 0 {
                f.push(format!("{}.{} = {v}", a.label, b.label));
            }
        }
    }
    checks.push(Check { name: "sections-disjoint", failures: f });

    // (f) curve count
    let mut f = Vec::new();
    let expect: usize = reducible.iter().map(FiberType::component_count).sum::<usize>() + s.mw.order();
    if s.curves.len() != expect {
        f.push(format!("{} curves, expected {expect}", s.curves.len()));
    }
    let labels: BTreeSet<&str> = s.curves.iter().map(|c| c.label.as_str()).collect();
    if labels.len() != s.curves.len() {
        f.push("duplicate labels".into());
    }
    for e in s.mw.elements() {
        if s.curve(&s.mw.label(e)).is_none() {
            f.push(format!("missing section {}", s.mw.label(e)));
        }
    }
    checks.push(Check { name: "curve-count", failures: f });

    // group law: P_j + P_k = P_{j+k}, etc.
    let mut f = Vec::new();
    let elems = s.mw.elements();
    for &a in &elems {
        for &b in &elems {
            let (Some(ca), Some(cb)) = (s.class_of(&s.mw.label(a)), s.class_of(&s.mw.label(b))) else { continue };
            let want = s.mw.label(s.mw.add(a, b));
            let got = mw_sum(s, &ca, &cb);
            if got != [want.clone()] {
                f.push(format!("{} + {} gives {:?}, expected {want}", s.mw.label(a), s.mw.label(b), got));
            }
        }
    }
    checks.push(Check { name: "group-law", failures: f });

    // reference columns: curve columns carry the curve class
    let mut f = Vec::new();
    for g in &s.reference {
        if let ReferenceKind::Curve(l) = &g.kind {
            if s.class_of(l) != Some(g.degree) {
                f.push(format!("{} labeled {l} has class {}", g.var, g.degree));
            }
        }
    }
    checks.push(Check { name: "reference", failures: f });

    ValidationReport { surface: s.name.clone(), checks }
}

// ---------------------------------------------------------------------------
// Loading

#[derive(Debug, Clone)]
pub struct Catalog {
    surfaces: Vec<SurfaceDescriptor>,
}

impl Catalog {
    pub fn bundled() -> Result<Self, CatalogError> {
        let surfaces = BUNDLED
            .iter()
            .map(|(name, text)| SurfaceDescriptor::parse(&file_name(name), text))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Catalog { surfaces })
    }

    pub fn from_dir(dir: &Path) -> Result<Self, CatalogError> {
        let mut surfaces = Vec::new();
        for name in SURFACES {
            let path = dir.join(file_name(name));
            let text = std::fs::read_to_string(&path).map_err(|source| CatalogError::Io { path: path.clone(), source })?;
            surfaces.push(SurfaceDescriptor::parse(&path.display().to_string(), &text)?);
        }
        Ok(Catalog { surfaces })
    }

    /// Explicit directory, then `$COXSURF_DATA`, then the bundled data.
    pub fn resolve(dir: Option<&Path>) -> Result<Self, CatalogError> {
        if let Some(d) = dir {
            return Self::from_dir(d);
        }
        match std::env::var_os(DATA_ENV) {
            Some(d) if !d.is_empty() => Self::from_dir(Path::new(&d)),
            _ => Self::bundled(),
        }
    }

    pub fn surfaces(&self) -> &[SurfaceDescriptor] {
        &self.surfaces
    }

    pub fn get(&self, name: &str) -> Result<&SurfaceDescriptor, CatalogError> {
        let canon = canonical_name(name).ok_or_else(|| CatalogError::UnknownSurface(name.to_string()))?;
        self.surfaces.iter().find(|s| s.name == canon).ok_or_else(|| CatalogError::UnknownSurface(name.to_string()))
    }
}

pub fn load_surface(name: &str) -> Result<SurfaceDescriptor, CatalogError> {
    Ok(Catalog::bundled()?.get(name)?.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use coxsurf_algebra::Cyclotomic3;

    #[test]
    fn names() {
        assert_eq!(canonical_name("X_11a"), Some("X_11(a)"));
        assert_eq!(canonical_name("X_11(a)"), Some("X_11(a)"));
        assert_eq!(canonical_name("X_411"), Some("X_411"));
        assert_eq!(canonical_name("3333"), Some("X_3333"));
        assert_eq!(canonical_name("NOPE"), None);
        assert_eq!(canonical_name("X_41"), None);
    }

    #[test]
    fn fiber_types() {
        for (s, n, e) in [("II*", 9, 10), ("III*", 8, 9), ("IV*", 7, 8), ("I4*", 9, 10), ("I0*", 5, 6), ("I1", 0, 1), ("II", 0, 2), ("III", 2, 3), ("I9", 9, 9)] {
            let f: FiberType = s.parse().unwrap();
            assert_eq!(f.component_count(), n, "{s}");
            assert_eq!(f.euler_number(), e, "{s}");
            assert_eq!(f.to_string(), s);
        }
        // the fiber graph of II* is the affine E8 diagram
        let g = FiberType::IIStar.graph();
        assert_eq!(g.multiplicities.iter().sum::<i64>(), 30);
        assert_eq!(g.edges.len(), 8);
    }

    #[test]
    fn weighted_graph_has_square_zero() {
        for f in ["II*", "III*", "IV*", "I0*", "I1*", "I2*", "I4*", "I2", "I3", "I9", "III", "IV"] {
            let g = f.parse::<FiberType>().unwrap().graph();
            let n = g.len();
            let mut sq = 0;
            for a in 0..n {
                for b in 0..n {
                    sq += g.multiplicities[a] * g.multiplicities[b] * g.meeting(a, b);
                }
            }
            assert_eq!(sq, 0, "{f}");
        }
    }

    #[test]
    fn mordell_weil_labels() {
        let g = MordellWeil { invariants: vec![4, 2] };
        assert_eq!(g.order(), 8);
        assert_eq!(g.parse_label("P3+Q1"), Some((3, 1)));
        assert_eq!(g.parse_label("Q2"), None);
        assert_eq!(g.label(g.add((3, 1), (2, 1))), "P1");
        assert_eq!(g.element_order((2, 0)), 2);
        assert_eq!(g.to_string(), "Z/4 + Z/2");
    }

    #[test]
    fn parameter_binding() {
        let two = Rational::from(2);
        assert_eq!(bind_parameter("(x1 - a*x2)*x0^2", "a", &two), "(x1 - (2)*x2)*x0^2");
        assert_eq!(bind_parameter("(a-1)*T2 - a*T3", "a", &two), "((2)-1)*T2 - (2)*T3");
        assert_eq!(bind_parameter("aT1", "a", &two), "aT1");
    }

    #[test]
    fn bundled_catalog_loads() {
        let cat = Catalog::bundled().unwrap();
        assert_eq!(cat.surfaces().len(), 16);
        let x = cat.get("X_3333").unwrap();
        assert_eq!(x.mw.invariants, vec![3, 3]);
        assert_eq!(x.field, FieldTag::Cyclotomic3);
        let x = cat.get("X_411").unwrap();
        assert_eq!(x.class_of("Th1.1").unwrap().0, [1, -1, -1, -1, 0, 0, 0, 0, 0, 0]);
        let x = cat.get("X_22").unwrap();
        assert_eq!(x.fibers, vec![FiberType::IIStar, FiberType::II]);
        assert_eq!(x.mw.order(), 1);
    }

    #[test]
    fn pencils() {
        let cat = Catalog::bundled().unwrap();
        let x = cat.get("X_3333").unwrap();
        let ring = SurfaceDescriptor::plane_ring();
        let p = x.pencil_member(Some(Cyclotomic3::zero())).unwrap();
        assert_eq!(p, Poly::parse(&ring, "x0^3 + x1^3 + x2^3").unwrap());
        let x = cat.get("X_411").unwrap();
        let p = x.pencil_member(Some(Rational::zero())).unwrap();
        assert_eq!(p, Poly::parse(&ring, "x0^2*x1 + x2^3 + x1^2*x2").unwrap());
        let b = x.pencil_member::<Rational>(None).unwrap();
        assert_eq!(b, Poly::parse(&ring, "x1*x2^2").unwrap());
        let x = cat.get("X_11a").unwrap();
        let b = x.pencil_member::<Rational>(None).unwrap();
        assert_eq!(b, Poly::parse(&ring, "x0^2*x1 - 2*x0^2*x2").unwrap());
    }

    #[test]
    fn malformed_files() {
        let bad = "name: X\nfibers: I3 Q\nmw: 1\nfield: QQ\npencil: x0 ; x1\n";
        assert!(matches!(SurfaceDescriptor::parse("t", bad), Err(CatalogError::Malformed { line: 2, .. })));
        let bad = "name: X\nfibers: I3\nmw: 1\nfield: QQ\npencil: x0 ; x1\n[curves]\nTh7.1 : [1,0,0,0,0,0,0,0,0,0]\n";
        assert!(SurfaceDescriptor::parse("t", bad).is_err());
    }
}

//! The versioned TOML input format for DGAs, DG modules and `k[T]`-modules.
//!
//! ```toml
//! format_version = "1"
//! field = "Q"
//! kind = "dga"
//! unit = "1"
//!
//! [degrees]
//! 0 = ["1"]
//! 2 = ["x"]
//! 4 = ["x2"]
//!
//! product = [["x", "x", "x2", 1]]
//! differential = []
//! ```
//!
//! Products and actions are records `[a, b, target, coefficient]`, the
//! differential has records `[source, target, coefficient]`. Products and
//! actions of the unit are implicit. A `dg_module` document carries its
//! algebra in an `[algebra]` table and a `side`; its action records read
//! `[r, m, target, c]` for `r·m` on the left and `[m, r, target, c]` for
//! `m·r` on the right. A `kt_module` document has a sphere dimension `d`,
//! action records `["T", m, target, c]` and optionally the expected
//! decomposition as `[[blocks]]` tables with keys `j`, `m`, `count`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::dga::{DgModule, FinDga, Side};
use crate::exactlin::{Field, Matrix, Scalar};
use crate::graded::{BasisRef, GradedMap, GradedVectorSpace};
use crate::loop_sphere::{BlockMultiset, GradedKTModule};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Dga,
    DgModule,
    KtModule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Int(n) => write!(f, "{n}"),
            Entry::Text(s) => write!(f, "{s:?}"),
        }
    }
}

pub type Record = Spanned<Vec<Entry>>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraTable {
    pub unit: Option<String>,
    #[serde(default)]
    pub degrees: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub product: Vec<Record>,
    #[serde(default)]
    pub differential: Vec<Record>,
}

/// The raw document, before names and coefficients are resolved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub format_version: String,
    pub field: String,
    pub kind: Kind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    #[serde(default)]
    pub degrees: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub product: Vec<Record>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub action: Vec<Record>,
    #[serde(default)]
    pub differential: Vec<Record>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<BlockMultiset>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraTable>,
}

/// A parsed and resolved document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Dga(FinDga),
    Module(DgModule),
    Kt {
        module: GradedKTModule,
        blocks: Option<BlockMultiset>,
    },
}

/// A diagnostic for the first failure in a document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError {
    pub line: Option<usize>,
    pub record: Option<String>,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.line, &self.record) {
            (Some(l), Some(r)) => write!(f, "line {l}, {r}: {}", self.message),
            (Some(l), None) => write!(f, "line {l}: {}", self.message),
            (None, Some(r)) => write!(f, "{r}: {}", self.message),
            (None, None) => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for FormatError {}

fn plain(message: impl Into<String>) -> FormatError {
    FormatError {
        line: None,
        record: None,
        message: message.into(),
    }
}

struct Ctx<'a> {
    text: &'a str,
    field: Field,
}

impl Ctx<'_> {
    fn line(&self, offset: usize) -> usize {
        self.text[..offset.min(self.text.len())].matches('\n').count() + 1
    }

    fn at(&self, table: &str, k: usize, r: &Record, message: impl Into<String>) -> FormatError {
        let entries: Vec<String> = r.get_ref().iter().map(|e| e.to_string()).collect();
        FormatError {
            line: (!self.text.is_empty()).then(|| self.line(r.span().start)),
            record: Some(format!("{table} record {} [{}]", k + 1, entries.join(", "))),
            message: message.into(),
        }
    }

    fn fields<'r>(
        &self,
        table: &str,
        k: usize,
        r: &'r Record,
        arity: usize,
    ) -> Result<&'r [Entry], FormatError> {
        let e = r.get_ref();
        if e.len() != arity {
            return Err(self.at(
                table,
                k,
                r,
                format!("expected {arity} entries, found {}", e.len()),
            ));
        }
        Ok(e)
    }

    fn name<'r>(&self, table: &str, k: usize, r: &Record, e: &'r Entry) -> Result<&'r str, FormatError> {
        match e {
            Entry::Text(s) => Ok(s),
            Entry::Int(_) => Err(self.at(table, k, r, format!("{e} is not a basis name"))),
        }
    }

    fn coefficient(&self, table: &str, k: usize, r: &Record, e: &Entry) -> Result<Scalar, FormatError> {
        let text = match e {
            Entry::Int(n) => n.to_string(),
            Entry::Text(s) => s.clone(),
        };
        self.field.parse(&text).map_err(|err| {
            self.at(
                table,
                k,
                r,
                format!("coefficient {text} in field {}: {err}", self.field),
            )
        })
    }
}

/// A basis declared by a `degrees` table.
struct Names {
    space: GradedVectorSpace,
    index: HashMap<String, BasisRef>,
}

impl Names {
    fn new(degrees: &BTreeMap<String, Vec<String>>, what: &str) -> Result<Self, FormatError> {
        let mut parsed = BTreeMap::new();
        for (key, labels) in degrees {
            let d: i32 = key
                .trim()
                .parse()
                .map_err(|_| plain(format!("{what} degree key {key:?} is not an integer")))?;
            if parsed.insert(d, labels).is_some() {
                return Err(plain(format!("{what} degree {d} is declared twice")));
            }
        }
        let mut space = GradedVectorSpace::new();
        let mut index = HashMap::new();
        for (d, labels) in parsed {
            for l in labels {
                let b = space.push(d, l.clone());
                if index.insert(l.clone(), b).is_some() {
                    return Err(plain(format!("{what} basis name {l:?} is declared twice")));
                }
            }
        }
        Ok(Names { space, index })
    }

    fn get(&self, ctx: &Ctx, table: &str, k: usize, r: &Record, name: &str) -> Result<BasisRef, FormatError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| ctx.at(table, k, r, format!("undeclared basis {name:?}")))
    }
}

/// Accumulates entries into the blocks of a graded map.
struct Blocks {
    degree: i32,
    blocks: BTreeMap<i32, Matrix>,
}

impl Blocks {
    fn new(degree: i32) -> Self {
        Blocks {
            degree,
            blocks: BTreeMap::new(),
        }
    }

    fn add(&mut self, field: Field, space: &GradedVectorSpace, src: BasisRef, tgt: BasisRef, c: &Scalar) {
        let m = self.blocks.entry(src.degree).or_insert_with(|| {
            Matrix::zeros(field, space.dim(src.degree + self.degree), space.dim(src.degree))
        });
        m.add_to(tgt.index, src.index, c);
    }

    fn finish(self) -> GradedMap {
        let mut g = GradedMap::zero(self.degree);
        for (d, m) in self.blocks {
            g.set_block(d, m);
        }
        g
    }
}

fn differential(ctx: &Ctx, names: &Names, records: &[Record]) -> Result<GradedMap, FormatError> {
    let mut out = Blocks::new(1);
    for (k, r) in records.iter().enumerate() {
        let e = ctx.fields("differential", k, r, 3)?;
        let s = names.get(ctx, "differential", k, r, ctx.name("differential", k, r, &e[0])?)?;
        let t = names.get(ctx, "differential", k, r, ctx.name("differential", k, r, &e[1])?)?;
        let c = ctx.coefficient("differential", k, r, &e[2])?;
        if t.degree != s.degree + 1 {
            return Err(ctx.at(
                "differential",
                k,
                r,
                format!("target has degree {}, expected {}", t.degree, s.degree + 1),
            ));
        }
        out.add(ctx.field, &names.space, s, t, &c);
    }
    Ok(out.finish())
}

fn algebra(ctx: &Ctx, table: &AlgebraTable) -> Result<FinDga, FormatError> {
    let names = Names::new(&table.degrees, "algebra")?;
    let unit_name = table.unit.as_deref().ok_or_else(|| plain("missing unit"))?;
    let unit = *names
        .index
        .get(unit_name)
        .ok_or_else(|| plain(format!("unit {unit_name:?} is not a declared basis name")))?;
    if unit.degree != 0 {
        return Err(plain(format!("unit {unit_name:?} has degree {}", unit.degree)));
    }
    let basis = names.space.basis();
    let position: HashMap<BasisRef, usize> = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let mut left: Vec<Blocks> = basis.iter().map(|b| Blocks::new(b.degree)).collect();
    for &b in &basis {
        left[position[&unit]].add(ctx.field, &names.space, b, b, &ctx.field.one());
        if b != unit {
            left[position[&b]].add(ctx.field, &names.space, unit, b, &ctx.field.one());
        }
    }
    for (k, r) in table.product.iter().enumerate() {
        let e = ctx.fields("product", k, r, 4)?;
        let mut refs = [unit; 3];
        for (slot, entry) in refs.iter_mut().zip(e) {
            *slot = names.get(ctx, "product", k, r, ctx.name("product", k, r, entry)?)?;
        }
        let [a, b, t] = refs;
        let c = ctx.coefficient("product", k, r, &e[3])?;
        if a == unit || b == unit {
            return Err(ctx.at("product", k, r, "products with the unit are implicit"));
        }
        if t.degree != a.degree + b.degree {
            return Err(ctx.at(
                "product",
                k,
                r,
                format!("target has degree {}, expected {}", t.degree, a.degree + b.degree),
            ));
        }
        left[position[&a]].add(ctx.field, &names.space, b, t, &c);
    }
    let differential = differential(ctx, &names, &table.differential)?;
    let left_mult = left.into_iter().map(Blocks::finish).collect();
    Ok(FinDga::from_parts(
        ctx.field,
        names.space,
        unit,
        left_mult,
        differential,
    ))
}

fn module(ctx: &Ctx, doc: &InputDocument) -> Result<DgModule, FormatError> {
    let table = doc
        .algebra
        .as_ref()
        .ok_or_else(|| plain("dg_module needs an [algebra] table"))?;
    let r = Arc::new(algebra(ctx, table)?);
    let side = doc
        .side
        .ok_or_else(|| plain("dg_module needs side = \"left\" or \"right\""))?;
    let names = Names::new(&doc.degrees, "module")?;
    let algebra_index: HashMap<&str, usize> = (0..r.basis().len()).map(|i| (r.label_of(i), i)).collect();
    let mut action: Vec<Blocks> = r.basis().iter().map(|b| Blocks::new(b.degree)).collect();
    for b in names.space.basis() {
        action[r.unit_index()].add(ctx.field, &names.space, b, b, &ctx.field.one());
    }
    for (k, rec) in doc.action.iter().enumerate() {
        let e = ctx.fields("action", k, rec, 4)?;
        let (alg, elt) = match side {
            Side::Left => (&e[0], &e[1]),
            Side::Right => (&e[1], &e[0]),
        };
        let alg = ctx.name("action", k, rec, alg)?;
        let t = algebra_index
            .get(alg)
            .copied()
            .ok_or_else(|| ctx.at("action", k, rec, format!("undeclared algebra basis {alg:?}")))?;
        if t == r.unit_index() {
            return Err(ctx.at("action", k, rec, "the unit acts implicitly"));
        }
        let m = names.get(ctx, "action", k, rec, ctx.name("action", k, rec, elt)?)?;
        let target = names.get(ctx, "action", k, rec, ctx.name("action", k, rec, &e[2])?)?;
        let c = ctx.coefficient("action", k, rec, &e[3])?;
        if target.degree != m.degree + r.degree_of(t) {
            return Err(ctx.at(
                "action",
                k,
                rec,
                format!(
                    "target has degree {}, expected {}",
                    target.degree,
                    m.degree + r.degree_of(t)
                ),
            ));
        }
        action[t].add(ctx.field, &names.space, m, target, &c);
    }
    let differential = differential(ctx, &names, &doc.differential)?;
    let action = action.into_iter().map(Blocks::finish).collect();
    Ok(DgModule::new(r, side, names.space, action, differential))
}

fn kt_module(ctx: &Ctx, doc: &InputDocument) -> Result<GradedKTModule, FormatError> {
    let d = doc
        .d
        .ok_or_else(|| plain("kt_module needs the sphere dimension d"))?;
    let names = Names::new(&doc.degrees, "module")?;
    let mut t_action = Blocks::new(1 - d);
    for (k, r) in doc.action.iter().enumerate() {
        let e = ctx.fields("action", k, r, 4)?;
        match ctx.name("action", k, r, &e[0])? {
            "T" => {}
            other => return Err(ctx.at("action", k, r, format!("only T acts, found {other:?}"))),
        }
        let s = names.get(ctx, "action", k, r, ctx.name("action", k, r, &e[1])?)?;
        let t = names.get(ctx, "action", k, r, ctx.name("action", k, r, &e[2])?)?;
        let c = ctx.coefficient("action", k, r, &e[3])?;
        if t.degree != s.degree + 1 - d {
            return Err(ctx.at(
                "action",
                k,
                r,
                format!("target has degree {}, expected {}", t.degree, s.degree + 1 - d),
            ));
        }
        t_action.add(ctx.field, &names.space, s, t, &c);
    }
    let differential = differential(ctx, &names, &doc.differential)?;
    let differential = (!differential.is_zero()).then_some(differential);
    GradedKTModule::new(ctx.field, d, names.space, t_action.finish(), differential)
        .map_err(|e| plain(e.to_string()))
}

/// Reads a document from TOML text.
pub fn parse_document(text: &str) -> Result<InputDocument, FormatError> {
    toml::from_str(text).map_err(|e| FormatError {
        line: e
            .span()
            .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1),
        record: None,
        message: e.message().to_string(),
    })
}

/// Resolves names, degrees and coefficients. With `field` given, the
/// document must declare that field.
pub fn resolve(doc: &InputDocument, text: &str, field: Option<Field>) -> Result<Document, FormatError> {
    if doc.format_version != FORMAT_VERSION {
        return Err(plain(format!("unknown format_version {:?}", doc.format_version)));
    }
    let declared: Field = doc.field.parse().map_err(|e| plain(format!("{e}")))?;
    if let Some(f) = field.filter(|&f| f != declared) {
        return Err(plain(format!(
            "field mismatch: document is over {declared}, requested {f}"
        )));
    }
    let ctx = Ctx {
        text,
        field: declared,
    };
    match doc.kind {
        Kind::Dga => {
            let table = AlgebraTable {
                unit: doc.unit.clone(),
                degrees: doc.degrees.clone(),
                product: doc.product.clone(),
                differential: doc.differential.clone(),
            };
            Ok(Document::Dga(algebra(&ctx, &table)?))
        }
        Kind::DgModule => Ok(Document::Module(module(&ctx, doc)?)),
        Kind::KtModule => Ok(Document::Kt {
            module: kt_module(&ctx, doc)?,
            blocks: doc.blocks.clone(),
        }),
    }
}

/// [`parse_document`] followed by [`resolve`].
pub fn parse_input(text: &str, field: Option<Field>) -> Result<Document, FormatError> {
    resolve(&parse_document(text)?, text, field)
}

fn entry(c: &Scalar) -> Entry {
    let s = c.to_string();
    s.parse().map(Entry::Int).unwrap_or(Entry::Text(s))
}

fn record(entries: Vec<Entry>) -> Record {
    Spanned::new(0..0, entries)
}

fn name(s: &str) -> Entry {
    Entry::Text(s.to_string())
}

fn degrees(space: &GradedVectorSpace) -> BTreeMap<String, Vec<String>> {
    space
        .degrees()
        .map(|d| (d.to_string(), space.labels(d).to_vec()))
        .collect()
}

/// Nonzero entries `(source, target, coefficient)` of a graded map.
fn entries<'a>(
    g: &'a GradedMap,
    space: &'a GradedVectorSpace,
) -> impl Iterator<Item = (&'a str, &'a str, Scalar)> + 'a {
    g.blocks().flat_map(move |(d, m)| {
        let t = d + g.degree;
        (0..m.cols()).flat_map(move |c| {
            (0..m.rows()).filter_map(move |r| {
                let x = m.get(r, c);
                (!x.is_zero()).then(|| {
                    (
                        space.labels(d)[c].as_str(),
                        space.labels(t)[r].as_str(),
                        x.clone(),
                    )
                })
            })
        })
    })
}

fn differential_records(g: &GradedMap, space: &GradedVectorSpace) -> Vec<Record> {
    entries(g, space)
        .map(|(s, t, c)| record(vec![name(s), name(t), entry(&c)]))
        .collect()
}

fn algebra_table(r: &FinDga) -> AlgebraTable {
    let unit = r.unit_index();
    let mut product = Vec::new();
    for a in (0..r.basis().len()).filter(|&a| a != unit) {
        for (s, t, c) in entries(r.left_mult(a), r.space()) {
            if s != r.label_of(unit) {
                product.push(record(vec![name(r.label_of(a)), name(s), name(t), entry(&c)]));
            }
        }
    }
    AlgebraTable {
        unit: Some(r.label_of(unit).to_string()),
        degrees: degrees(r.space()),
        product,
        differential: differential_records(r.differential(), r.space()),
    }
}

fn blank(field: Field, kind: Kind) -> InputDocument {
    InputDocument {
        format_version: FORMAT_VERSION.to_string(),
        field: field.to_string(),
        kind,
        d: None,
        side: None,
        unit: None,
        degrees: BTreeMap::new(),
        product: Vec::new(),
        action: Vec::new(),
        differential: Vec::new(),
        blocks: None,
        algebra: None,
    }
}

/// The document describing a resolved object.
pub fn to_input_document(doc: &Document) -> InputDocument {
    match doc {
        Document::Dga(r) => {
            let t = algebra_table(r);
            InputDocument {
                unit: t.unit,
                degrees: t.degrees,
                product: t.product,
                differential: t.differential,
                ..blank(r.field(), Kind::Dga)
            }
        }
        Document::Module(m) => {
            let r = m.algebra();
            let mut action = Vec::new();
            for t in (0..r.basis().len()).filter(|&t| t != r.unit_index()) {
                for (s, tgt, c) in entries(m.action(t), m.space()) {
                    let (a, b) = match m.side() {
                        Side::Left => (name(r.label_of(t)), name(s)),
                        Side::Right => (name(s), name(r.label_of(t))),
                    };
                    action.push(record(vec![a, b, name(tgt), entry(&c)]));
                }
            }
            InputDocument {
                side: Some(m.side()),
                degrees: degrees(m.space()),
                action,
                differential: differential_records(m.differential(), m.space()),
                algebra: Some(algebra_table(r)),
                ..blank(m.field(), Kind::DgModule)
            }
        }
        Document::Kt { module, blocks } => InputDocument {
            d: Some(module.d()),
            degrees: degrees(module.space()),
            action: entries(module.t_action(), module.space())
                .map(|(s, t, c)| record(vec![name("T"), name(s), name(t), entry(&c)]))
                .collect(),
            differential: module
                .differential()
                .map_or_else(Vec::new, |g| differential_records(g, module.space())),
            blocks: blocks.clone(),
            ..blank(module.field(), Kind::KtModule)
        },
    }
}

/// TOML text that [`parse_input`] reads back to an equal object.
pub fn serialize(doc: &Document) -> String {
    toml::to_string(&to_input_document(doc)).expect("documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::models::{sphere, sphere_with_acyclic_pair, truncated_polynomial, wedge};
    use crate::loop_sphere::{make_cyclic, make_sphere_resolution, Block};

    const SPHERE3: &str = r#"
format_version = "1"
field = "Q"
kind = "dga"
unit = "1"

[degrees]
0 = ["1"]
3 = ["s"]
"#;

    #[test]
    fn reads_a_sphere() {
        let Document::Dga(r) = parse_input(SPHERE3, None).unwrap() else {
            panic!("not a dga");
        };
        assert_eq!(r.space().dims(), [(0, 1), (3, 1)].into_iter().collect());
        assert_eq!(r, sphere(Field::Rational, 3).unwrap());
    }

    #[test]
    fn diagnostics_name_the_record() {
        let text = r#"format_version = "1"
field = "Q"
kind = "dga"
unit = "1"
product = [
  ["x", "x", "x2", 1],
  ["x", "xx", "x2", 1],
]

[degrees]
0 = ["1"]
2 = ["x"]
4 = ["x2"]
"#;
        let err = parse_input(text, None).unwrap_err();
        assert_eq!(err.line, Some(7));
        assert!(err.record.as_deref().unwrap().starts_with("product record 2"));
        assert!(err.message.contains("\"xx\""));
        assert!(err.to_string().starts_with("line 7, product record 2"));

        let bad = SPHERE3.replace("format_version = \"1\"", "format_version = \"7\"");
        assert!(parse_input(&bad, None)
            .unwrap_err()
            .message
            .contains("format_version"));
        let p = Field::prime(3).unwrap();
        assert!(parse_input(SPHERE3, Some(p))
            .unwrap_err()
            .message
            .contains("mismatch"));
        let half = "format_version = \"1\"\nfield = \"p=2\"\nkind = \"dga\"\nunit = \"1\"\n\
                    differential = [[\"a\", \"b\", \"1/2\"]]\n[degrees]\n0 = [\"1\"]\n2 = [\"a\"]\n3 = [\"b\"]\n";
        let err = parse_input(half, None).unwrap_err();
        assert_eq!(err.line, Some(5));
        assert!(err.message.contains("1/2"));
        let syntax = parse_input("format_version = \n", None).unwrap_err();
        assert_eq!(syntax.line, Some(1));
    }

    fn round_trip(doc: Document) {
        let text = serialize(&doc);
        let back = parse_input(&text, None).unwrap_or_else(|e| panic!("{e}\n{text}"));
        assert_eq!(back, doc, "{text}");
        assert_eq!(serialize(&back), text);
    }

    #[test]
    fn serialization_round_trips() {
        let q = Field::Rational;
        for r in [
            sphere(q, 4).unwrap(),
            wedge(q).unwrap(),
            truncated_polynomial(q, 2, 3).unwrap(),
            sphere_with_acyclic_pair(q, 3, 4).unwrap(),
            sphere(Field::prime(5).unwrap(), 2).unwrap(),
        ] {
            let r = Arc::new(r);
            round_trip(Document::Dga((*r).clone()));
            round_trip(Document::Module(DgModule::regular(r.clone(), Side::Left)));
            round_trip(Document::Module(
                DgModule::regular(r.clone(), Side::Right).suspend(2),
            ));
            round_trip(Document::Module(
                DgModule::simple(r.clone(), Side::Left).dualize(),
            ));
        }
        let c = make_cyclic(3, 1, 2)
            .unwrap()
            .direct_sum(&make_cyclic(3, 0, 0).unwrap())
            .unwrap();
        let blocks = Some([Block { j: 1, m: 2 }, Block { j: 0, m: 0 }].into_iter().collect());
        round_trip(Document::Kt { module: c, blocks });
        round_trip(Document::Kt {
            module: make_sphere_resolution(2, -4..=0).unwrap(),
            blocks: None,
        });
    }
}

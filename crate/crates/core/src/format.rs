//! Plain-text instance files.
//!
//! ```text
//! wxp-instance 1
//! field Q                  # or: field F 7
//! hopf
//!   dim 2
//!   label 0 1
//!   label 1 g
//!   unit 0 1               # unit = Σ v e_i
//!   mult 1 1 0 1           # e_i e_j has coefficient v on e_k
//!   comult 1 1 1 1         # Δ(e_i) has coefficient v on e_j ⊗ e_k
//!   counit 0 1
//!   antipode 0 0 1         # S(e_c) has coefficient v on e_r ("antipode r c v")
//! end
//! algebra ... end          # dim, label, unit, mult
//! action
//!   act 1 1 1 -1           # e_h · e_a has coefficient v on e_c
//! end
//! cocycle bb
//!   sig 1 1 0 1            # σ(e_h, e_k) has coefficient v on e_c
//! end
//! product bb ... end       # dim, label, unit, mult, coact i j h v, verdict id V
//! ```
//!
//! Scalars are integers or `p/q`. Serialization is canonical (entries
//! sorted, zeros omitted), so `serialize ∘ parse ∘ serialize = serialize`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::crossed::{CocycleTable, Measuring, ProductTable, Variant};
use crate::error::{CrossedError, FormatError, WhaError};
use crate::fixtures::FixtureBundle;
use crate::linalg::{FinSpace, LinMap, Matrix, Vector};
use crate::report::Verdict;
use crate::scalar::{Field, Scalar};
use crate::wha::{StructuredAlgebra, StructuredCoalgebra, WeakBialgebra, WeakHopfAlgebra};

const HEADER: &str = "wxp-instance 1";

/// Everything an instance file can hold. Nothing here is verified; use
/// [`Instance::weak_hopf`] and [`Instance::measuring`] for that.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub field: Field,
    pub hopf_algebra: StructuredAlgebra,
    pub hopf_coalgebra: StructuredCoalgebra,
    pub antipode: LinMap,
    pub antipode_inv: Option<LinMap>,
    pub algebra: Option<StructuredAlgebra>,
    /// `action[h * dim A + a] = e_h · e_a`.
    pub action: Option<Vec<Vector>>,
    pub cocycle: Option<(Variant, Vec<Vector>)>,
    pub products: Vec<ProductTable>,
}

impl Instance {
    pub fn from_fixture(b: &FixtureBundle) -> Self {
        let h = b.hopf();
        Instance {
            field: h.field(),
            hopf_algebra: h.bialgebra().algebra().clone(),
            hopf_coalgebra: h.bialgebra().coalgebra().clone(),
            antipode: h.antipode().clone(),
            antipode_inv: None,
            algebra: Some(b.algebra().clone()),
            action: Some(b.measuring.action_table().to_vec()),
            cocycle: Some((b.cocycle.variant(), b.cocycle.table().to_vec())),
            products: Vec::new(),
        }
    }

    pub fn weak_bialgebra(&self) -> Result<WeakBialgebra, WhaError> {
        WeakBialgebra::new(self.hopf_algebra.clone(), self.hopf_coalgebra.clone())
    }

    /// Verifies all axioms; fails with the report when any does not hold.
    pub fn weak_hopf(&self) -> Result<WeakHopfAlgebra, WhaError> {
        WeakHopfAlgebra::new(self.weak_bialgebra()?, self.antipode.clone(), self.antipode_inv.clone())
    }

    /// `None` when the file has no action block.
    pub fn measuring(&self, hopf: WeakHopfAlgebra) -> Option<Result<Measuring, CrossedError>> {
        let alg = self.algebra.clone()?;
        let action = self.action.clone()?;
        Some(Measuring::new(hopf, alg, action))
    }

    pub fn cocycle_table(&self, m: &Measuring) -> Option<Result<CocycleTable, CrossedError>> {
        let (variant, table) = self.cocycle.clone()?;
        Some(CocycleTable::new(m, variant, table))
    }

    /// SHA-256 of the canonical serialization, hex encoded.
    pub fn digest(&self) -> String {
        let d = Sha256::digest(serialize(self).as_bytes());
        d.iter().fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }
}

// ---------------------------------------------------------------------------
// serialization

fn write_space(out: &mut String, sp: &FinSpace) {
    let _ = writeln!(out, "  dim {}", sp.dim());
    for (i, l) in sp.labels().iter().enumerate() {
        let _ = writeln!(out, "  label {i} {l}");
    }
}

fn write_vec(out: &mut String, key: &str, prefix: &str, v: &Vector) {
    for (i, c) in v.support() {
        let _ = writeln!(out, "  {key} {prefix}{i} {c}");
    }
}

/// Entries of a table of vectors indexed by `(i, j)` with row length `n`.
fn write_table(out: &mut String, key: &str, n: usize, table: &[Vector]) {
    for (idx, v) in table.iter().enumerate() {
        write_vec(out, key, &format!("{} {} ", idx / n, idx % n), v);
    }
}

fn write_algebra(out: &mut String, a: &StructuredAlgebra) {
    write_space(out, a.space());
    write_vec(out, "unit", "", a.unit());
    write_table(out, "mult", a.dim(), a.table());
}

/// Canonical text form.
pub fn serialize(inst: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{HEADER}");
    match inst.field {
        Field::Rational => out.push_str("field Q\n"),
        Field::Prime(p) => {
            let _ = writeln!(out, "field F {p}");
        }
    }
    out.push_str("hopf\n");
    write_algebra(&mut out, &inst.hopf_algebra);
    let n = inst.hopf_algebra.dim();
    for i in 0..n {
        let d = inst.hopf_coalgebra.comult(i);
        for (idx, c) in d.support() {
            let _ = writeln!(out, "  comult {i} {} {} {c}", idx / n, idx % n);
        }
    }
    for (i, c) in inst.hopf_coalgebra.counit().iter().enumerate() {
        if !c.is_zero() {
            let _ = writeln!(out, "  counit {i} {c}");
        }
    }
    write_matrix(&mut out, "antipode", inst.antipode.matrix());
    if let Some(s) = &inst.antipode_inv {
        write_matrix(&mut out, "antipode-inverse", s.matrix());
    }
    out.push_str("end\n");
    if let Some(a) = &inst.algebra {
        out.push_str("algebra\n");
        write_algebra(&mut out, a);
        out.push_str("end\n");
    }
    if let Some(action) = &inst.action {
        out.push_str("action\n");
        let m = inst.algebra.as_ref().map_or(1, StructuredAlgebra::dim).max(1);
        write_table(&mut out, "act", m, action);
        out.push_str("end\n");
    }
    if let Some((variant, table)) = &inst.cocycle {
        let _ = writeln!(out, "cocycle {}", variant.as_str());
        write_table(&mut out, "sig", n, table);
        out.push_str("end\n");
    }
    for p in &inst.products {
        out.push_str(&serialize_product(p));
    }
    out
}

fn write_matrix(out: &mut String, key: &str, m: &Matrix) {
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let x = m.get(r, c);
            if !x.is_zero() {
                let _ = writeln!(out, "  {key} {r} {c} {x}");
            }
        }
    }
}

/// A `product` block on its own.
pub fn serialize_product(p: &ProductTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "product {}", p.variant.as_str());
    write_space(&mut out, &p.space);
    write_vec(&mut out, "unit", "", &p.unit);
    write_table(&mut out, "mult", p.space.dim(), &p.mult);
    let d = p.space.dim();
    let n = p.coaction.first().map_or(0, |v| v.dim() / d.max(1));
    for (i, v) in p.coaction.iter().enumerate() {
        for (idx, c) in v.support() {
            let _ = writeln!(out, "  coact {i} {} {} {c}", idx / n, idx % n);
        }
    }
    for (id, v) in &p.verdicts {
        let _ = writeln!(out, "  verdict {id} {}", v.as_str());
    }
    out.push_str("end\n");
    out
}

// ---------------------------------------------------------------------------
// parsing

struct Line<'a> {
    no: usize,
    text: &'a str,
    /// `(byte offset, token)`
    tokens: Vec<(usize, &'a str)>,
}

impl<'a> Line<'a> {
    fn new(no: usize, text: &'a str) -> Self {
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, ch) in text.char_indices() {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    tokens.push((s, &text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            tokens.push((s, &text[s..]));
        }
        Line { no, text, tokens }
    }

    fn column(&self, byte: usize) -> usize {
        self.text[..byte].chars().count() + 1
    }

    fn err_at(&self, tok: usize, message: impl Into<String>) -> FormatError {
        let byte = self.tokens.get(tok).map_or(self.text.len(), |t| t.0);
        FormatError::Parse {
            line: self.no,
            column: self.column(byte),
            message: message.into(),
        }
    }

    fn keyword(&self) -> &'a str {
        self.tokens[0].1
    }

    fn arity(&self, n: usize) -> Result<(), FormatError> {
        match self.tokens.len().cmp(&(n + 1)) {
            std::cmp::Ordering::Equal => Ok(()),
            std::cmp::Ordering::Less => Err(self.err_at(self.tokens.len(), format!("`{}` expects {n} arguments", self.keyword()))),
            std::cmp::Ordering::Greater => Err(self.err_at(n + 1, "unexpected extra token")),
        }
    }

    fn index(&self, tok: usize, bound: usize) -> Result<usize, FormatError> {
        let t = self.tokens[tok].1;
        let v: usize = t.parse().map_err(|_| self.err_at(tok, format!("`{t}` is not an index")))?;
        if v >= bound {
            return Err(self.err_at(tok, format!("index {v} out of range (dimension {bound})")));
        }
        Ok(v)
    }

    fn count(&self, tok: usize) -> Result<usize, FormatError> {
        let t = self.tokens[tok].1;
        t.parse().map_err(|_| self.err_at(tok, format!("`{t}` is not a dimension")))
    }

    fn scalar(&self, tok: usize, f: Field) -> Result<Scalar, FormatError> {
        f.parse_scalar(self.tokens[tok].1).map_err(|e| self.err_at(tok, e.to_string()))
    }

    /// Text after the first two tokens (the label of a `label i text` line).
    fn tail(&self) -> Option<&'a str> {
        self.tokens.get(2).map(|&(s, _)| self.text[s..].trim_end())
    }
}

/// Collects sparse entries and rejects duplicates.
struct Sparse {
    seen: BTreeSet<Vec<usize>>,
}

impl Sparse {
    fn new() -> Self {
        Sparse { seen: BTreeSet::new() }
    }

    fn claim(&mut self, line: &Line, key: Vec<usize>) -> Result<(), FormatError> {
        if !self.seen.insert(key) {
            return Err(line.err_at(1, "duplicate entry"));
        }
        Ok(())
    }
}

struct Reader<'a> {
    lines: Vec<Line<'a>>,
    pos: std::cell::Cell<usize>,
    last_line: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            last_line = i + 1;
            let body = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            let line = Line::new(i + 1, body);
            if !line.tokens.is_empty() {
                lines.push(line);
            }
        }
        Reader { lines, pos: std::cell::Cell::new(0), last_line }
    }

    fn next(&self) -> Option<&Line<'a>> {
        let l = self.lines.get(self.pos.get())?;
        self.pos.set(self.pos.get() + 1);
        Some(l)
    }

    fn eof_error(&self, message: &str) -> FormatError {
        FormatError::Parse {
            line: self.last_line + 1,
            column: 1,
            message: message.to_string(),
        }
    }
}

/// Contents of a `dim`/`label`/`unit`/`mult` block plus the block-specific
/// lines handed to `extra`.
struct AlgebraBlock {
    space: FinSpace,
    unit: Vector,
    mult: Vec<Vector>,
}

fn read_block<'a>(
    r: &Reader<'a>,
    f: Field,
    block: &str,
    mut extra: impl FnMut(&Line<'a>, usize) -> Result<bool, FormatError>,
) -> Result<AlgebraBlock, FormatError> {
    let mut dim: Option<usize> = None;
    let mut labels: Vec<Option<String>> = Vec::new();
    let mut unit = Vec::new();
    let mut mult: Vec<Vector> = Vec::new();
    let mut sparse = Sparse::new();
    loop {
        let line = r.next().ok_or_else(|| r.eof_error(&format!("unterminated `{block}` block")))?;
        let kw = line.keyword();
        if kw == "end" {
            line.arity(0)?;
            break;
        }
        if kw == "dim" {
            line.arity(1)?;
            if dim.is_some() {
                return Err(line.err_at(0, "dimension given twice"));
            }
            let d = line.count(1)?;
            dim = Some(d);
            labels = vec![None; d];
            unit = vec![f.zero(); d];
            mult = vec![Vector::zeros(f, d); d * d];
            continue;
        }
        let d = dim.ok_or_else(|| line.err_at(0, "`dim` must come first"))?;
        match kw {
            "label" => {
                if line.tokens.len() < 3 {
                    return Err(line.err_at(line.tokens.len(), "`label` expects an index and a text"));
                }
                let i = line.index(1, d)?;
                if labels[i].is_some() {
                    return Err(line.err_at(1, "label given twice"));
                }
                labels[i] = line.tail().map(str::to_string);
            }
            "unit" => {
                line.arity(2)?;
                let i = line.index(1, d)?;
                sparse.claim(line, vec![0, i])?;
                unit[i] = line.scalar(2, f)?;
            }
            "mult" => {
                line.arity(4)?;
                let (i, j, k) = (line.index(1, d)?, line.index(2, d)?, line.index(3, d)?);
                sparse.claim(line, vec![1, i, j, k])?;
                mult[i * d + j][k] = line.scalar(4, f)?;
            }
            _ => {
                if !extra(line, d)? {
                    return Err(line.err_at(0, format!("unknown keyword `{kw}` in `{block}` block")));
                }
            }
        }
    }
    dim.ok_or_else(|| r.eof_error(&format!("`{block}` block has no `dim`")))?;
    let labels: Vec<String> = labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.unwrap_or_else(|| format!("e{i}")))
        .collect();
    let space = FinSpace::new(f, labels).map_err(|e| FormatError::Invalid(e.to_string()))?;
    Ok(AlgebraBlock {
        space,
        unit: Vector::from_scalars(unit),
        mult,
    })
}

fn read_table<'a>(
    r: &Reader<'a>,
    f: Field,
    block: &str,
    key: &str,
    rows: usize,
    cols: usize,
    width: usize,
) -> Result<Vec<Vector>, FormatError> {
    let mut table = vec![Vector::zeros(f, width); rows * cols];
    let mut sparse = Sparse::new();
    loop {
        let line = r.next().ok_or_else(|| r.eof_error(&format!("unterminated `{block}` block")))?;
        match line.keyword() {
            "end" => {
                line.arity(0)?;
                return Ok(table);
            }
            k if k == key => {
                line.arity(4)?;
                let (i, j, c) = (line.index(1, rows)?, line.index(2, cols)?, line.index(3, width)?);
                sparse.claim(line, vec![i, j, c])?;
                table[i * cols + j][c] = line.scalar(4, f)?;
            }
            k => return Err(line.err_at(0, format!("unknown keyword `{k}` in `{block}` block"))),
        }
    }
}

fn variant_token(line: &Line, tok: usize) -> Result<Variant, FormatError> {
    match line.tokens[tok].1 {
        "bb" => Ok(Variant::Bb),
        "ag" => Ok(Variant::Ag),
        t => Err(line.err_at(tok, format!("unknown variant `{t}` (expected bb or ag)"))),
    }
}

fn read_product<'a>(r: &Reader<'a>, f: Field, variant: Variant, n: usize) -> Result<ProductTable, FormatError> {
    let mut coact: Vec<(usize, usize, usize, Scalar)> = Vec::new();
    let mut verdicts = Vec::new();
    let mut seen_ids = BTreeSet::new();
    let mut sparse = Sparse::new();
    let block = read_block(r, f, "product", |line, d| match line.keyword() {
        "coact" => {
            line.arity(4)?;
            let (i, j, h) = (line.index(1, d)?, line.index(2, d)?, line.index(3, n)?);
            sparse.claim(line, vec![i, j, h])?;
            coact.push((i, j, h, line.scalar(4, f)?));
            Ok(true)
        }
        "verdict" => {
            line.arity(2)?;
            let id = line.tokens[1].1.to_string();
            if !seen_ids.insert(id.clone()) {
                return Err(line.err_at(1, "verdict given twice"));
            }
            let v = match line.tokens[2].1 {
                "PASS" => Verdict::Pass,
                "FAIL" => Verdict::Fail,
                "SKIP" => Verdict::NotChecked,
                t => return Err(line.err_at(2, format!("unknown verdict `{t}`"))),
            };
            verdicts.push((id, v));
            Ok(true)
        }
        _ => Ok(false),
    })?;
    let d = block.space.dim();
    let mut coaction = vec![Vector::zeros(f, d * n); d];
    for (i, j, h, c) in coact {
        coaction[i][j * n + h] = c;
    }
    Ok(ProductTable {
        variant,
        space: block.space,
        mult: block.mult,
        unit: block.unit,
        coaction,
        verdicts,
    })
}

fn invalid(e: impl std::fmt::Display) -> FormatError {
    FormatError::Invalid(e.to_string())
}

/// Parses an instance file. Structural problems carry a line and column;
/// inconsistent sizes across blocks are reported as [`FormatError::Invalid`].
pub fn parse(text: &str) -> Result<Instance, FormatError> {
    let r = Reader::new(text);
    let head = r.next().ok_or_else(|| r.eof_error("empty file"))?;
    if head.tokens.iter().map(|t| t.1).collect::<Vec<_>>() != HEADER.split(' ').collect::<Vec<_>>() {
        return Err(head.err_at(0, format!("expected header `{HEADER}`")));
    }
    let fl = r.next().ok_or_else(|| r.eof_error("missing `field` line"))?;
    if fl.keyword() != "field" || fl.tokens.len() < 2 {
        return Err(fl.err_at(0, "expected `field Q` or `field F <p>`"));
    }
    let field = match fl.tokens[1].1 {
        "Q" => {
            fl.arity(1)?;
            Field::Rational
        }
        "F" => {
            fl.arity(2)?;
            let p: u64 = fl.tokens[2].1.parse().map_err(|_| fl.err_at(2, "modulus must be an integer"))?;
            Field::prime(p).map_err(|e| fl.err_at(2, e.to_string()))?
        }
        _ => return Err(fl.err_at(1, "expected `Q` or `F`")),
    };

    let mut hopf: Option<(StructuredAlgebra, StructuredCoalgebra, LinMap, Option<LinMap>)> = None;
    let mut algebra: Option<StructuredAlgebra> = None;
    let mut action: Option<Vec<Vector>> = None;
    let mut cocycle: Option<(Variant, Vec<Vector>)> = None;
    let mut products = Vec::new();

    while let Some(line) = r.next() {
        let (no, kw) = (line.no, line.keyword());
        let dup = |what: &str| FormatError::Parse {
            line: no,
            column: 1,
            message: format!("second `{what}` block"),
        };
        match kw {
            "hopf" => {
                line.arity(0)?;
                if hopf.is_some() {
                    return Err(dup("hopf"));
                }
                hopf = Some(read_hopf(&r, field)?);
            }
            "algebra" => {
                line.arity(0)?;
                if algebra.is_some() {
                    return Err(dup("algebra"));
                }
                let b = read_block(&r, field, "algebra", |_, _| Ok(false))?;
                algebra = Some(StructuredAlgebra::new(b.space, b.mult, b.unit).map_err(invalid)?);
            }
            "action" => {
                line.arity(0)?;
                if action.is_some() {
                    return Err(dup("action"));
                }
                let n = hopf.as_ref().ok_or_else(|| line.err_at(0, "`action` needs a preceding `hopf` block"))?.0.dim();
                let m = algebra
                    .as_ref()
                    .ok_or_else(|| line.err_at(0, "`action` needs a preceding `algebra` block"))?
                    .dim();
                action = Some(read_table(&r, field, "action", "act", n, m, m)?);
            }
            "cocycle" => {
                line.arity(1)?;
                if cocycle.is_some() {
                    return Err(dup("cocycle"));
                }
                let v = variant_token(line, 1)?;
                let n = hopf.as_ref().ok_or_else(|| line.err_at(0, "`cocycle` needs a preceding `hopf` block"))?.0.dim();
                let m = algebra
                    .as_ref()
                    .ok_or_else(|| line.err_at(0, "`cocycle` needs a preceding `algebra` block"))?
                    .dim();
                cocycle = Some((v, read_table(&r, field, "cocycle", "sig", n, n, m)?));
            }
            "product" => {
                line.arity(1)?;
                let v = variant_token(line, 1)?;
                let n = hopf.as_ref().ok_or_else(|| line.err_at(0, "`product` needs a preceding `hopf` block"))?.0.dim();
                products.push(read_product(&r, field, v, n)?);
            }
            _ => return Err(line.err_at(0, format!("unknown block `{kw}`"))),
        }
    }
    let (hopf_algebra, hopf_coalgebra, antipode, antipode_inv) = hopf.ok_or_else(|| r.eof_error("missing `hopf` block"))?;
    Ok(Instance {
        field,
        hopf_algebra,
        hopf_coalgebra,
        antipode,
        antipode_inv,
        algebra,
        action,
        cocycle,
        products,
    })
}

type HopfParts = (StructuredAlgebra, StructuredCoalgebra, LinMap, Option<LinMap>);

fn read_hopf(r: &Reader, f: Field) -> Result<HopfParts, FormatError> {
    let mut comult: Vec<(usize, usize, usize, Scalar)> = Vec::new();
    let mut counit: Vec<(usize, Scalar)> = Vec::new();
    let mut s: Vec<(usize, usize, Scalar)> = Vec::new();
    let mut s_inv: Option<Vec<(usize, usize, Scalar)>> = None;
    let mut sparse = Sparse::new();
    let block = read_block(r, f, "hopf", |line, d| {
        match line.keyword() {
            "comult" => {
                line.arity(4)?;
                let (i, j, k) = (line.index(1, d)?, line.index(2, d)?, line.index(3, d)?);
                sparse.claim(line, vec![0, i, j, k])?;
                comult.push((i, j, k, line.scalar(4, f)?));
            }
            "counit" => {
                line.arity(2)?;
                let i = line.index(1, d)?;
                sparse.claim(line, vec![1, i])?;
                counit.push((i, line.scalar(2, f)?));
            }
            "antipode-shape" => {
                line.arity(2)?;
                let (rows, cols) = (line.count(1)?, line.count(2)?);
                if rows != cols {
                    return Err(line.err_at(1, format!("antipode must be square, got {rows}x{cols}")));
                }
                if rows != d {
                    return Err(line.err_at(1, format!("antipode must be {d}x{d}, got {rows}x{cols}")));
                }
            }
            kw @ ("antipode" | "antipode-inverse") => {
                line.arity(3)?;
                let (row, col) = (line.index(1, d)?, line.index(2, d)?);
                let tag = if kw == "antipode" { 2 } else { 3 };
                sparse.claim(line, vec![tag, row, col])?;
                let v = line.scalar(3, f)?;
                if kw == "antipode" {
                    s.push((row, col, v));
                } else {
                    s_inv.get_or_insert_with(Vec::new).push((row, col, v));
                }
            }
            _ => return Ok(false),
        }
        Ok(true)
    })?;
    let d = block.space.dim();
    let alg = StructuredAlgebra::new(block.space.clone(), block.mult, block.unit).map_err(invalid)?;
    let mut delta = vec![Vector::zeros(f, d * d); d];
    for (i, j, k, c) in comult {
        delta[i][j * d + k] = c;
    }
    let mut eps = vec![f.zero(); d];
    for (i, c) in counit {
        eps[i] = c;
    }
    let coalg = StructuredCoalgebra::new(block.space.clone(), delta, eps).map_err(invalid)?;
    let to_map = |entries: Vec<(usize, usize, Scalar)>| {
        let mut m = Matrix::zeros(f, d, d);
        for (row, col, v) in entries {
            m.set(row, col, v);
        }
        LinMap::new(block.space.clone(), block.space.clone(), m).map_err(invalid)
    };
    let antipode = to_map(s)?;
    let antipode_inv = s_inv.map(to_map).transpose()?;
    Ok((alg, coalg, antipode, antipode_inv))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal() -> &'static str {
        "wxp-instance 1\nfield Q\nhopf\n  dim 1\n  unit 0 1\n  mult 0 0 0 1\n  comult 0 0 0 1\n  counit 0 1\n  antipode 0 0 1\nend\n"
    }

    #[test]
    fn minimal_round_trip() {
        let inst = parse(minimal()).unwrap();
        let text = serialize(&inst);
        assert_eq!(parse(&text).unwrap(), inst);
        assert!(inst.weak_hopf().is_ok());
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = format!("# leading\n\n{}", minimal().replace("field Q", "field Q   # rationals"));
        assert!(parse(&text).is_ok());
    }

    #[test]
    fn errors_carry_position() {
        let bad = minimal().replace("mult 0 0 0 1", "mult 0 0 3 1");
        match parse(&bad) {
            Err(FormatError::Parse { line, column, .. }) => assert_eq!((line, column), (6, 12)),
            other => panic!("{other:?}"),
        }
        let bad = minimal().replace("counit 0 1", "counit 0 0.5");
        assert!(matches!(parse(&bad), Err(FormatError::Parse { line: 8, column: 12, .. })));
        let bad = minimal().replace("counit 0 1", "counit 0 1\n  counit 0 1");
        assert!(matches!(parse(&bad), Err(FormatError::Parse { line: 9, .. })));
        let bad = minimal().replace("  antipode 0 0 1", "  antipode-shape 1 2");
        assert!(matches!(parse(&bad), Err(FormatError::Parse { line: 9, .. })));
        assert!(matches!(parse("wxp-instance 2\n"), Err(FormatError::Parse { line: 1, .. })));
        assert!(matches!(parse(&minimal().replace("end\n", "")), Err(FormatError::Parse { .. })));
    }

    #[test]
    fn prime_field_round_trip() {
        let text = minimal().replace("field Q", "field F 7").replace("counit 0 1", "counit 0 8");
        let inst = parse(&text).unwrap();
        assert!(inst.hopf_coalgebra.counit()[0].is_one());
        assert_eq!(parse(&serialize(&inst)).unwrap(), inst);
        assert!(parse(&minimal().replace("field Q", "field F 8")).is_err());
    }

    #[test]
    fn fixtures_round_trip_and_validate() {
        use crate::crossed::{build_bb, Measuring};
        for name in ["paper8", "smash-c2", "groupoid-3"] {
            let b = crate::fixtures::by_name(name, Field::Rational).unwrap().unwrap();
            let mut inst = Instance::from_fixture(&b);
            let p = build_bb(&b.measuring, &b.cocycle).unwrap();
            inst.products.push(p.table().clone());
            let text = serialize(&inst);
            let back = parse(&text).unwrap();
            assert_eq!(back, inst, "{name}");
            assert_eq!(serialize(&back), text);
            assert_eq!(back.digest(), inst.digest());
            let h = back.weak_hopf().unwrap();
            let m: Measuring = back.measuring(h).unwrap().unwrap();
            let c = back.cocycle_table(&m).unwrap().unwrap();
            assert_eq!(c.table(), b.cocycle.table());
        }
    }

    #[test]
    fn digest_is_hex_sha256() {
        let d = parse(minimal()).unwrap().digest();
        assert_eq!(d.len(), 64);
        assert!(d.chars().all(|c| c.is_ascii_hexdigit()));
    }

    proptest::proptest! {
        #[test]
        fn random_tables_round_trip(
            n in 1usize..4,
            entries in proptest::collection::vec((0usize..64, -5i64..=5, 1i64..=4), 0..40),
            prime in proptest::bool::ANY,
        ) {
            let f = if prime { Field::prime(101).unwrap() } else { Field::Rational };
            let sp = FinSpace::new(f, (0..n).map(|i| format!("b {i}")).collect()).unwrap();
            let mut mult = vec![Vector::zeros(f, n); n * n];
            let mut delta = vec![Vector::zeros(f, n * n); n];
            let mut s = Matrix::zeros(f, n, n);
            for &(k, num, den) in &entries {
                let v = f.from_i64(num).div(&f.from_i64(den)).unwrap();
                let (i, j, l) = (k % n, (k / n) % n, (k / (n * n)) % n);
                mult[i * n + j][l] = v.clone();
                delta[l][i * n + j] = v.clone();
                s.set(i, j, v);
            }
            let inst = Instance {
                field: f,
                hopf_algebra: StructuredAlgebra::new(sp.clone(), mult, sp.basis_vector(0)).unwrap(),
                hopf_coalgebra: StructuredCoalgebra::new(sp.clone(), delta, vec![f.one(); n]).unwrap(),
                antipode: LinMap::new(sp.clone(), sp.clone(), s).unwrap(),
                antipode_inv: None,
                algebra: None,
                action: None,
                cocycle: None,
                products: Vec::new(),
            };
            let text = serialize(&inst);
            let back = parse(&text).unwrap();
            proptest::prop_assert_eq!(&back, &inst);
            proptest::prop_assert_eq!(serialize(&back), text);
        }
    }
}

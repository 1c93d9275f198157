//! The `gral` text format.
//!
//! ```text
//! gral 1
//! GROUPOID I1
//! OBJECTS
//! 0
//! 1
//! MORPHISMS
//! id_0 0 0
//! i 0 1
//! ...
//! COMP
//! i id_0 i
//! ...
//! ID
//! 0 id_0
//! INV
//! i i^-1
//! END
//! ASSEMBLY X
//! BASE I1            # a block name in this document or a file path
//! RTYPE I1
//! RFUN
//! OB 0 0
//! MOR i i
//! END
//! FUNCTOR F
//! DOM X              # groupoid or assembly
//! COD X
//! OB 0 1
//! MOR i i^-1
//! END
//! ```
//!
//! Tokens are separated by whitespace. A token containing whitespace, `#`
//! or `"` is written in double quotes with `\"` and `\\` escapes. `#`
//! starts a comment. The same document can be written as JSON.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use gral_core::groupoid::{FinGroupoid, RawGroupoid};
use gral_core::{GFunctor, Grpd};
use gral_pgasm::{Asm, Assembly};
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

pub const VERSION: u32 = 1;

type Pairs = Vec<(String, String)>;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{file}{line}:{col}: {msg}")]
    Syntax {
        file: String,
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{0}")]
    Structural(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, FormatError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidBlock {
    pub name: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<(String, String, String)>,
    pub comp: Vec<(String, String, String)>,
    pub id: Vec<(String, String)>,
    pub inv: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssemblyBlock {
    pub name: String,
    pub base: String,
    pub rtype: String,
    pub ob: Vec<(String, String)>,
    pub mor: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorBlock {
    pub name: String,
    pub dom: String,
    pub cod: String,
    pub ob: Vec<(String, String)>,
    pub mor: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Block {
    Groupoid(GroupoidBlock),
    Assembly(AssemblyBlock),
    Functor(FunctorBlock),
}

impl Block {
    pub fn name(&self) -> &str {
        match self {
            Block::Groupoid(b) => &b.name,
            Block::Assembly(b) => &b.name,
            Block::Functor(b) => &b.name,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub format: String,
    pub version: u32,
    pub blocks: Vec<Block>,
}

impl Document {
    pub fn new() -> Document {
        Document {
            format: "gral".into(),
            version: VERSION,
            blocks: Vec::new(),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name() == name)
    }

    pub fn push_groupoid(&mut self, name: &str, g: &FinGroupoid) {
        let raw = g.to_raw();
        self.blocks.push(Block::Groupoid(GroupoidBlock {
            name: name.into(),
            objects: raw.objects,
            morphisms: raw.morphisms,
            comp: raw.comp,
            id: raw.identity,
            inv: raw.inverse,
        }));
    }

    fn table(f: &GFunctor) -> (Pairs, Pairs) {
        let (d, c) = (f.dom(), f.cod());
        let ob = d
            .objects()
            .map(|o| (d.object_id(o).to_string(), c.object_id(f.ob(o)).to_string()))
            .collect();
        let mor = d
            .morphisms()
            .map(|m| (d.morphism_id(m).to_string(), c.morphism_id(f.mor(m)).to_string()))
            .collect();
        (ob, mor)
    }

    /// An assembly with its two groupoids as `<name>.base` and `<name>.rtype`.
    pub fn push_assembly(&mut self, name: &str, x: &Assembly) {
        let (base, rtype) = (format!("{name}.base"), format!("{name}.rtype"));
        self.push_groupoid(&base, &x.base);
        self.push_groupoid(&rtype, &x.rtype);
        let (ob, mor) = Self::table(&x.rfun);
        self.blocks.push(Block::Assembly(AssemblyBlock {
            name: name.into(),
            base,
            rtype,
            ob,
            mor,
        }));
    }

    pub fn push_functor(&mut self, name: &str, dom: &str, cod: &str, f: &GFunctor) {
        let (ob, mor) = Self::table(f);
        self.blocks.push(Block::Functor(FunctorBlock {
            name: name.into(),
            dom: dom.into(),
            cod: cod.into(),
            ob,
            mor,
        }));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(src: &str) -> Result<Document> {
        let d: Document = serde_json::from_str(src)?;
        if d.format != "gral" || d.version != VERSION {
            return Err(FormatError::Structural(format!(
                "unsupported format {} version {}",
                d.format, d.version
            )));
        }
        Ok(d)
    }
}

fn quote(t: &str) -> String {
    let plain = !t.is_empty() && !t.chars().any(|c| c.is_whitespace() || c == '#' || c == '"');
    if plain {
        return t.to_string();
    }
    let mut s = String::from("\"");
    for c in t.chars() {
        if c == '"' || c == '\\' {
            s.push('\\');
        }
        s.push(c);
    }
    s.push('"');
    s
}

fn line(f: &mut fmt::Formatter<'_>, toks: &[&str]) -> fmt::Result {
    let q: Vec<String> = toks.iter().map(|t| quote(t)).collect();
    writeln!(f, "{}", q.join(" "))
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gral {}", self.version)?;
        for b in &self.blocks {
            match b {
                Block::Groupoid(g) => {
                    line(f, &["GROUPOID", &g.name])?;
                    writeln!(f, "OBJECTS")?;
                    for o in &g.objects {
                        line(f, &[o])?;
                    }
                    writeln!(f, "MORPHISMS")?;
                    for (m, s, t) in &g.morphisms {
                        line(f, &[m, s, t])?;
                    }
                    writeln!(f, "COMP")?;
                    for (a, b, c) in &g.comp {
                        line(f, &[a, b, c])?;
                    }
                    writeln!(f, "ID")?;
                    for (a, b) in &g.id {
                        line(f, &[a, b])?;
                    }
                    writeln!(f, "INV")?;
                    for (a, b) in &g.inv {
                        line(f, &[a, b])?;
                    }
                }
                Block::Assembly(a) => {
                    line(f, &["ASSEMBLY", &a.name])?;
                    line(f, &["BASE", &a.base])?;
                    line(f, &["RTYPE", &a.rtype])?;
                    writeln!(f, "RFUN")?;
                    write_table(f, &a.ob, &a.mor)?;
                }
                Block::Functor(m) => {
                    line(f, &["FUNCTOR", &m.name])?;
                    line(f, &["DOM", &m.dom])?;
                    line(f, &["COD", &m.cod])?;
                    write_table(f, &m.ob, &m.mor)?;
                }
            }
            writeln!(f, "END")?;
        }
        Ok(())
    }
}

fn write_table(f: &mut fmt::Formatter<'_>, ob: &[(String, String)], mor: &[(String, String)]) -> fmt::Result {
    for (a, b) in ob {
        line(f, &["OB", a, b])?;
    }
    for (a, b) in mor {
        line(f, &["MOR", a, b])?;
    }
    Ok(())
}

struct Tok {
    text: String,
    col: usize,
}

struct Line {
    no: usize,
    toks: Vec<Tok>,
}

struct Lexer<'a> {
    file: &'a str,
}

impl Lexer<'_> {
    fn err<T>(&self, line: usize, col: usize, msg: impl Into<String>) -> Result<T> {
        Err(FormatError::Syntax {
            file: if self.file.is_empty() {
                String::new()
            } else {
                format!("{}:", self.file)
            },
            line,
            col,
            msg: msg.into(),
        })
    }

    fn lines(&self, src: &str) -> Result<Vec<Line>> {
        let mut out = Vec::new();
        for (k, raw) in src.lines().enumerate() {
            let no = k + 1;
            let chars: Vec<char> = raw.chars().collect();
            let mut toks = Vec::new();
            let mut i = 0;
            while i < chars.len() {
                let c = chars[i];
                if c.is_whitespace() {
                    i += 1;
                } else if c == '#' {
                    break;
                } else if c == '"' {
                    let col = i + 1;
                    let mut s = String::new();
                    i += 1;
                    loop {
                        match chars.get(i) {
                            None => return self.err(no, col, "unterminated quoted token"),
                            Some('"') => break,
                            Some('\\') => match chars.get(i + 1) {
                                Some(&e @ ('"' | '\\')) => {
                                    s.push(e);
                                    i += 1;
                                }
                                _ => return self.err(no, i + 1, "bad escape"),
                            },
                            Some(&ch) => s.push(ch),
                        }
                        i += 1;
                    }
                    i += 1;
                    toks.push(Tok { text: s, col });
                } else {
                    let col = i + 1;
                    let mut s = String::new();
                    while i < chars.len() && !chars[i].is_whitespace() && chars[i] != '#' {
                        if chars[i] == '"' {
                            return self.err(no, i + 1, "quote inside a token");
                        }
                        s.push(chars[i]);
                        i += 1;
                    }
                    toks.push(Tok { text: s, col });
                }
            }
            if !toks.is_empty() {
                out.push(Line { no, toks });
            }
        }
        Ok(out)
    }
}

/// Parse the text format. `file` is only used in error messages.
pub fn parse_document(src: &str, file: &str) -> Result<Document> {
    let lx = Lexer { file };
    let lines = lx.lines(src)?;
    let mut it = lines.iter().peekable();
    let Some(head) = it.next() else {
        return lx.err(1, 1, "empty document; expected `gral 1`");
    };
    if head.toks[0].text != "gral" || head.toks.len() != 2 {
        return lx.err(head.no, head.toks[0].col, "expected `gral <version>`");
    }
    match head.toks[1].text.parse::<u32>() {
        Ok(VERSION) => {}
        _ => return lx.err(head.no, head.toks[1].col, format!("unsupported version; expected {VERSION}")),
    }
    let mut doc = Document::new();
    let arity = |l: &Line, n: usize| -> Result<()> {
        if l.toks.len() != n {
            let col = l.toks.get(n).map(|t| t.col).unwrap_or(l.toks.last().map(|t| t.col).unwrap_or(1));
            return lx.err(l.no, col, format!("expected {n} fields, found {}", l.toks.len()));
        }
        Ok(())
    };
    let t = |l: &Line, k: usize| l.toks[k].text.clone();
    while let Some(l) = it.next() {
        let kw = l.toks[0].text.as_str();
        match kw {
            "GROUPOID" | "ASSEMBLY" | "FUNCTOR" => arity(l, 2)?,
            _ => return lx.err(l.no, l.toks[0].col, format!("expected GROUPOID, ASSEMBLY or FUNCTOR, found `{kw}`")),
        }
        let name = t(l, 1);
        if doc.get(&name).is_some() {
            return lx.err(l.no, l.toks[1].col, format!("duplicate block name {name}"));
        }
        let mut section = String::new();
        let mut g = GroupoidBlock {
            name: name.clone(),
            objects: vec![],
            morphisms: vec![],
            comp: vec![],
            id: vec![],
            inv: vec![],
        };
        let mut refs: BTreeMap<&str, String> = BTreeMap::new();
        let (mut ob, mut mor) = (Vec::new(), Vec::new());
        let mut closed = false;
        for b in it.by_ref() {
            let k = b.toks[0].text.as_str();
            if k == "END" {
                arity(b, 1)?;
                closed = true;
                break;
            }
            match (kw, k) {
                ("GROUPOID", "OBJECTS" | "MORPHISMS" | "COMP" | "ID" | "INV") | ("ASSEMBLY", "RFUN") => {
                    arity(b, 1)?;
                    section = k.to_string();
                }
                ("ASSEMBLY", "BASE" | "RTYPE") | ("FUNCTOR", "DOM" | "COD") => {
                    arity(b, 2)?;
                    let key = if kw == "ASSEMBLY" {
                        if k == "BASE" { "BASE" } else { "RTYPE" }
                    } else if k == "DOM" {
                        "DOM"
                    } else {
                        "COD"
                    };
                    refs.insert(key, t(b, 1));
                }
                ("ASSEMBLY", "OB" | "MOR") if section == "RFUN" => {
                    arity(b, 3)?;
                    if k == "OB" { &mut ob } else { &mut mor }.push((t(b, 1), t(b, 2)));
                }
                ("FUNCTOR", "OB" | "MOR") => {
                    arity(b, 3)?;
                    if k == "OB" { &mut ob } else { &mut mor }.push((t(b, 1), t(b, 2)));
                }
                ("GROUPOID", _) => match section.as_str() {
                    "OBJECTS" => {
                        arity(b, 1)?;
                        g.objects.push(t(b, 0));
                    }
                    "MORPHISMS" => {
                        arity(b, 3)?;
                        g.morphisms.push((t(b, 0), t(b, 1), t(b, 2)));
                    }
                    "COMP" => {
                        arity(b, 3)?;
                        g.comp.push((t(b, 0), t(b, 1), t(b, 2)));
                    }
                    "ID" => {
                        arity(b, 2)?;
                        g.id.push((t(b, 0), t(b, 1)));
                    }
                    "INV" => {
                        arity(b, 2)?;
                        g.inv.push((t(b, 0), t(b, 1)));
                    }
                    _ => return lx.err(b.no, b.toks[0].col, "expected a section header"),
                },
                _ => return lx.err(b.no, b.toks[0].col, format!("unexpected `{k}` in {kw} block")),
            }
        }
        if !closed {
            return lx.err(l.no, l.toks[0].col, format!("{kw} block {name} is not closed by END"));
        }
        let label = name.clone();
        let need = |key: &str| -> Result<String> {
            refs.get(key)
                .cloned()
                .map_or_else(|| lx.err(l.no, l.toks[0].col, format!("{kw} block {label} lacks {key}")), Ok)
        };
        doc.blocks.push(match kw {
            "GROUPOID" => Block::Groupoid(g),
            "ASSEMBLY" => Block::Assembly(AssemblyBlock {
                name,
                base: need("BASE")?,
                rtype: need("RTYPE")?,
                ob,
                mor,
            }),
            _ => Block::Functor(FunctorBlock {
                name,
                dom: need("DOM")?,
                cod: need("COD")?,
                ob,
                mor,
            }),
        });
    }
    Ok(doc)
}

/// Read a document in either format.
pub fn read_document(path: &Path) -> Result<Document> {
    let src = std::fs::read_to_string(path)?;
    if src.trim_start().starts_with('{') {
        Document::from_json(&src)
    } else {
        parse_document(&src, &path.display().to_string())
    }
}

/// A source of a functor: its domain and codomain names, and whether they
/// are assemblies.
#[derive(Clone, Debug)]
pub struct ResolvedFunctor {
    pub fun: GFunctor,
    pub dom: String,
    pub cod: String,
    pub dom_asm: Option<Asm>,
    pub cod_asm: Option<Asm>,
}

/// All blocks of a document built and cross-referenced.
#[derive(Clone, Debug, Default)]
pub struct Resolved {
    pub groupoids: BTreeMap<String, Grpd>,
    pub assemblies: BTreeMap<String, Asm>,
    pub functors: BTreeMap<String, ResolvedFunctor>,
    /// Block names in document order.
    pub order: Vec<String>,
}

enum Target {
    Groupoid(Grpd),
    Assembly(Asm),
}

struct Resolver<'a> {
    doc: &'a Document,
    dir: Option<PathBuf>,
    out: Resolved,
    depth: usize,
}

impl Resolver<'_> {
    fn target(&mut self, name: &str) -> Result<Target> {
        if let Some(g) = self.out.groupoids.get(name) {
            return Ok(Target::Groupoid(g.clone()));
        }
        if let Some(a) = self.out.assemblies.get(name) {
            return Ok(Target::Assembly(a.clone()));
        }
        if self.doc.get(name).is_some() {
            self.block(name)?;
            return self.target(name);
        }
        let Some(dir) = &self.dir else {
            return Err(FormatError::Structural(format!("dangling reference {name}")));
        };
        if self.depth > 8 {
            return Err(FormatError::Structural(format!("reference chain too deep at {name}")));
        }
        let path = dir.join(name);
        if !path.exists() {
            return Err(FormatError::Structural(format!("dangling reference {name}")));
        }
        let sub = read_document(&path)?;
        let r = resolve_at(&sub, path.parent().map(Path::to_path_buf), self.depth + 1)?;
        let first = sub
            .blocks
            .iter()
            .find(|b| !matches!(b, Block::Functor(_)))
            .ok_or_else(|| FormatError::Structural(format!("{name} holds no groupoid or assembly")))?;
        let t = match first {
            Block::Assembly(a) => Target::Assembly(r.assemblies[&a.name].clone()),
            _ => Target::Groupoid(r.groupoids[first.name()].clone()),
        };
        match &t {
            Target::Groupoid(g) => self.out.groupoids.insert(name.to_string(), g.clone()),
            Target::Assembly(a) => {
                self.out.assemblies.insert(name.to_string(), a.clone());
                None
            }
        };
        Ok(t)
    }

    fn groupoid(&mut self, name: &str) -> Result<Grpd> {
        match self.target(name)? {
            Target::Groupoid(g) => Ok(g),
            Target::Assembly(_) => Err(FormatError::Structural(format!("{name} is an assembly, not a groupoid"))),
        }
    }

    fn block(&mut self, name: &str) -> Result<()> {
        if self.out.order.iter().any(|n| n == name) {
            return Ok(());
        }
        let block = self.doc.get(name).expect("block exists").clone();
        match &block {
            Block::Groupoid(g) => {
                let raw = RawGroupoid {
                    objects: g.objects.clone(),
                    morphisms: g.morphisms.clone(),
                    comp: g.comp.clone(),
                    identity: g.id.clone(),
                    inverse: g.inv.clone(),
                };
                let fin = FinGroupoid::from_raw(&raw).map_err(|e| FormatError::Structural(format!("groupoid {name}: {e}")))?;
                self.out.groupoids.insert(name.to_string(), Arc::new(fin));
            }
            Block::Assembly(a) => {
                let base = self.groupoid(&a.base)?;
                let rtype = self.groupoid(&a.rtype)?;
                let rfun = table_functor(name, &base, &rtype, &a.ob, &a.mor)?;
                let asm = Assembly::new(base, rtype, rfun).map_err(|e| FormatError::Structural(format!("assembly {name}: {e}")))?;
                self.out.assemblies.insert(name.to_string(), asm);
            }
            Block::Functor(f) => {
                let dom = self.target(&f.dom)?;
                let cod = self.target(&f.cod)?;
                let (dg, da) = match dom {
                    Target::Groupoid(g) => (g, None),
                    Target::Assembly(a) => (a.base.clone(), Some(a)),
                };
                let (cg, ca) = match cod {
                    Target::Groupoid(g) => (g, None),
                    Target::Assembly(a) => (a.base.clone(), Some(a)),
                };
                let fun = table_functor(name, &dg, &cg, &f.ob, &f.mor)?;
                self.out.functors.insert(
                    name.to_string(),
                    ResolvedFunctor {
                        fun,
                        dom: f.dom.clone(),
                        cod: f.cod.clone(),
                        dom_asm: da,
                        cod_asm: ca,
                    },
                );
            }
        }
        self.out.order.push(name.to_string());
        Ok(())
    }
}

fn table_functor(name: &str, dom: &Grpd, cod: &Grpd, ob: &[(String, String)], mor: &[(String, String)]) -> Result<GFunctor> {
    let bad = |m: String| FormatError::Structural(format!("{name}: {m}"));
    let mut omap = vec![None; dom.object_count()];
    for (a, b) in ob {
        let x = dom.object_by_id(a).ok_or_else(|| bad(format!("dangling object {a}")))?;
        let y = cod.object_by_id(b).ok_or_else(|| bad(format!("dangling object {b}")))?;
        if omap[x.idx()].replace(y).is_some() {
            return Err(bad(format!("object {a} mapped twice")));
        }
    }
    let mut mmap = vec![None; dom.morphism_count()];
    for (a, b) in mor {
        let x = dom.morphism_by_id(a).ok_or_else(|| bad(format!("dangling morphism {a}")))?;
        let y = cod.morphism_by_id(b).ok_or_else(|| bad(format!("dangling morphism {b}")))?;
        if mmap[x.idx()].replace(y).is_some() {
            return Err(bad(format!("morphism {a} mapped twice")));
        }
    }
    let omap = omap
        .into_iter()
        .enumerate()
        .map(|(k, o)| o.ok_or_else(|| bad(format!("object {} is not mapped", dom.object_id(gral_core::Obj(k as u32))))))
        .collect::<Result<Vec<_>>>()?;
    let mmap = mmap
        .into_iter()
        .enumerate()
        .map(|(k, m)| m.ok_or_else(|| bad(format!("morphism {} is not mapped", dom.morphism_id(gral_core::Mor(k as u32))))))
        .collect::<Result<Vec<_>>>()?;
    GFunctor::new(dom.clone(), cod.clone(), omap, mmap).map_err(|e| bad(e.to_string()))
}

fn resolve_at(doc: &Document, dir: Option<PathBuf>, depth: usize) -> Result<Resolved> {
    let mut r = Resolver {
        doc,
        dir,
        out: Resolved::default(),
        depth,
    };
    for b in &doc.blocks {
        r.block(b.name())?;
    }
    r.out.order.retain(|n| doc.get(n).is_some());
    Ok(r.out)
}

/// Build every block. References that are not block names are read as
/// files relative to `dir`.
pub fn resolve(doc: &Document, dir: Option<&Path>) -> Result<Resolved> {
    resolve_at(doc, dir.map(Path::to_path_buf), 0)
}

/// One groupoid as a document.
pub fn groupoid_text(name: &str, g: &FinGroupoid) -> String {
    let mut d = Document::new();
    d.push_groupoid(name, g);
    d.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use gral_core::groupoid::{codiscrete, cyclic, walking_iso};

    #[test]
    fn groupoid_round_trip() {
        for g in [walking_iso(), cyclic(3, "o"), codiscrete(&["a b".to_string(), "c#".to_string()])] {
            let text = groupoid_text("G", &g);
            let doc = parse_document(&text, "").unwrap();
            assert_eq!(doc.to_string(), text);
            let r = resolve(&doc, None).unwrap();
            assert_eq!(*r.groupoids["G"], *g);
            let back = Document::from_json(&doc.to_json()).unwrap();
            assert_eq!(back, doc);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_document("gral 1\nGROUPOID G\nOBJECTS\na b\nEND\n", "g.txt").unwrap_err();
        match e {
            FormatError::Syntax { line, col, .. } => assert_eq!((line, col), (4, 3)),
            other => panic!("{other}"),
        }
        let e = parse_document("gral 2\n", "").unwrap_err();
        assert!(matches!(e, FormatError::Syntax { line: 1, col: 6, .. }));
        let e = parse_document("gral 1\nGROUPOID G\nOBJECTS\n\"a\n", "").unwrap_err();
        assert!(matches!(e, FormatError::Syntax { line: 4, col: 1, .. }));
    }

    #[test]
    fn dangling_morphism_is_structural() {
        let src = "gral 1\nGROUPOID G\nOBJECTS\na\nMORPHISMS\nid_a a a\nCOMP\nid_a id_a id_a\nID\na id_a\nINV\nid_a f\nEND\n";
        let doc = parse_document(src, "").unwrap();
        assert!(matches!(resolve(&doc, None), Err(FormatError::Structural(_))));
    }

    #[test]
    fn assembly_round_trip() {
        let g = cyclic(2, "z");
        let x = Assembly::of(&GFunctor::identity(&g));
        let mut d = Document::new();
        d.push_assembly("X", &x);
        d.push_functor("F", "X", "X", &GFunctor::identity(&g));
        let text = d.to_string();
        let r = resolve(&parse_document(&text, "").unwrap(), None).unwrap();
        let y = &r.assemblies["X"];
        assert_eq!(y.rfun.omap(), x.rfun.omap());
        assert_eq!(y.rfun.mmap(), x.rfun.mmap());
        assert!(r.functors["F"].dom_asm.is_some());
    }
}

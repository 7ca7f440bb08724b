//! The forbidden set: five small graphs and five infinite families built
//! on the gadgets `H_k`, with template search and certificates.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{is_induced_embedding, is_induced_isomorphic, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ForbiddenId {
    K14,
    K23Star,
    K24Star,
    A,
    B,
    Fam1(usize),
    Fam2(usize),
    Fam3(usize),
    Fam4(usize),
    Fam5(usize, usize),
}

impl ForbiddenId {
    pub fn family(&self) -> &'static str {
        match self {
            ForbiddenId::K14 => "K14",
            ForbiddenId::K23Star => "K23star",
            ForbiddenId::K24Star => "K24star",
            ForbiddenId::A => "A",
            ForbiddenId::B => "B",
            ForbiddenId::Fam1(_) => "Fam1",
            ForbiddenId::Fam2(_) => "Fam2",
            ForbiddenId::Fam3(_) => "Fam3",
            ForbiddenId::Fam4(_) => "Fam4",
            ForbiddenId::Fam5(..) => "Fam5",
        }
    }

    pub fn k(&self) -> Option<usize> {
        match *self {
            ForbiddenId::Fam1(k) | ForbiddenId::Fam2(k) | ForbiddenId::Fam3(k) | ForbiddenId::Fam4(k) => Some(k),
            ForbiddenId::Fam5(k, _) => Some(k),
            _ => None,
        }
    }

    pub fn n(&self) -> Option<usize> {
        match *self {
            ForbiddenId::Fam5(_, n) => Some(n),
            _ => None,
        }
    }

    /// Number of template vertices.
    pub fn size(&self) -> usize {
        match *self {
            ForbiddenId::K14 | ForbiddenId::K23Star => 5,
            ForbiddenId::K24Star | ForbiddenId::A | ForbiddenId::B => 6,
            ForbiddenId::Fam1(k) | ForbiddenId::Fam2(k) | ForbiddenId::Fam4(k) => 2 * k + 6,
            ForbiddenId::Fam3(k) => 2 * k + 5,
            ForbiddenId::Fam5(k, n) => 2 * k + 2 * n + 6,
        }
    }

    fn order(&self) -> usize {
        match self {
            ForbiddenId::K14 => 0,
            ForbiddenId::K23Star => 1,
            ForbiddenId::K24Star => 2,
            ForbiddenId::A => 3,
            ForbiddenId::B => 4,
            ForbiddenId::Fam1(_) => 5,
            ForbiddenId::Fam2(_) => 6,
            ForbiddenId::Fam3(_) => 7,
            ForbiddenId::Fam4(_) => 8,
            ForbiddenId::Fam5(..) => 9,
        }
    }

    /// Search order: template size, then family, then parameters.
    pub fn search_key(&self) -> (usize, usize, usize, usize) {
        (self.size(), self.order(), self.k().unwrap_or(0), self.n().unwrap_or(0))
    }

    pub fn from_parts(family: &str, k: Option<usize>, n: Option<usize>) -> Result<ForbiddenId> {
        let need = |x: Option<usize>| {
            x.ok_or_else(|| Error::Precondition(format!("family {family} needs a parameter")))
        };
        let id = match family {
            "K14" => ForbiddenId::K14,
            "K23star" => ForbiddenId::K23Star,
            "K24star" => ForbiddenId::K24Star,
            "A" => ForbiddenId::A,
            "B" => ForbiddenId::B,
            "Fam1" => ForbiddenId::Fam1(need(k)?),
            "Fam2" => ForbiddenId::Fam2(need(k)?),
            "Fam3" => ForbiddenId::Fam3(need(k)?),
            "Fam4" => ForbiddenId::Fam4(need(k)?),
            "Fam5" => ForbiddenId::Fam5(need(k)?, need(n)?),
            other => return Err(Error::Precondition(format!("unknown forbidden family `{other}`"))),
        };
        id.check()?;
        Ok(id)
    }

    fn check(&self) -> Result<()> {
        if self.k() == Some(0) || self.n() == Some(0) {
            return Err(Error::Precondition(format!("parameters of {self} must be positive")));
        }
        Ok(())
    }
}

impl fmt::Display for ForbiddenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k(), self.n()) {
            (Some(k), Some(n)) => write!(f, "{}({k},{n})", self.family()),
            (Some(k), None) => write!(f, "{}({k})", self.family()),
            _ => f.write_str(self.family()),
        }
    }
}

impl FromStr for ForbiddenId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Precondition(format!("cannot parse forbidden id `{s}`"));
        let Some(open) = s.find('(') else {
            return ForbiddenId::from_parts(s, None, None);
        };
        let inner = s[open..].strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
        let params: Vec<usize> = inner
            .split(',')
            .map(|p| p.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match params.as_slice() {
            [k] => ForbiddenId::from_parts(&s[..open], Some(*k), None),
            [k, n] => ForbiddenId::from_parts(&s[..open], Some(*k), Some(*n)),
            _ => Err(bad()),
        }
    }
}

struct Builder {
    labels: Vec<String>,
    edges: Vec<(String, String)>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            labels: Vec::new(),
            edges: Vec::new(),
        }
    }

    fn vertex(&mut self, l: impl Into<String>) {
        self.labels.push(l.into());
    }

    fn edge(&mut self, u: impl Into<String>, v: impl Into<String>) {
        self.edges.push((u.into(), v.into()));
    }

    fn build(self) -> Result<Graph> {
        let mut g = Graph::with_labels(self.labels)?;
        for (u, v) in self.edges {
            let (u, v) = (g.vertex(&u)?, g.vertex(&v)?);
            g.add_edge(u, v)?;
        }
        Ok(g)
    }
}

/// Adds `H_k` with every label suffixed by `prime`, naming the second
/// chain `second` (`c` normally, `d` for the primed copy).
fn add_h(b: &mut Builder, k: usize, prime: &str, second: char) {
    let a = |j: usize| format!("a_{j}{prime}");
    let c = |j: usize| format!("{second}_{j}{prime}");
    b.vertex(a(0));
    b.vertex(format!("b_0{prime}"));
    b.vertex(format!("v{prime}"));
    for j in 1..=k {
        b.vertex(a(j));
    }
    for j in 1..=k {
        b.vertex(c(j));
    }
    b.edge(a(0), a(1));
    b.edge(a(0), c(1));
    b.edge(a(0), format!("b_0{prime}"));
    b.edge(a(0), format!("v{prime}"));
    b.edge(a(1), c(1));
    for j in 1..k {
        b.edge(a(j), a(j + 1));
        b.edge(a(j), c(j + 1));
        b.edge(a(j + 1), c(j + 1));
    }
}

pub fn generate_h(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::Precondition("H_k needs k >= 1".into()));
    }
    let mut b = Builder::new();
    add_h(&mut b, k, "", 'c');
    b.build()
}

fn small(labels: &[&str], edges: &[(&str, &str)]) -> Result<Graph> {
    Graph::from_labelled_edges(labels, edges)
}

pub fn generate(id: ForbiddenId) -> Result<Graph> {
    id.check()?;
    match id {
        ForbiddenId::K14 => small(
            &["p1", "p2", "p3", "p4", "p5"],
            &[("p1", "p2"), ("p1", "p3"), ("p1", "p4"), ("p1", "p5")],
        ),
        ForbiddenId::K23Star => small(
            &["p6", "p7", "p8", "p9", "p10"],
            &[
                ("p6", "p8"),
                ("p6", "p7"),
                ("p6", "p9"),
                ("p6", "p10"),
                ("p8", "p7"),
                ("p8", "p9"),
                ("p8", "p10"),
            ],
        ),
        ForbiddenId::K24Star => small(
            &["p11", "p12", "p13", "p14", "p15", "p16"],
            &[
                ("p11", "p12"),
                ("p12", "p13"),
                ("p12", "p14"),
                ("p12", "p15"),
                ("p13", "p15"),
                ("p14", "p15"),
                ("p15", "p16"),
            ],
        ),
        ForbiddenId::A => small(
            &["p30", "p31", "p32", "p33", "p34", "p35"],
            &[
                ("p35", "p30"),
                ("p35", "p31"),
                ("p35", "p32"),
                ("p35", "p33"),
                ("p35", "p34"),
                ("p30", "p31"),
                ("p31", "p32"),
                ("p32", "p33"),
            ],
        ),
        ForbiddenId::B => small(
            &["p17", "p18", "p19", "p20", "p21", "p22"],
            &[
                ("p17", "p18"),
                ("p17", "p19"),
                ("p17", "p20"),
                ("p18", "p19"),
                ("p18", "p20"),
                ("p19", "p20"),
                ("p18", "p21"),
                ("p18", "p22"),
            ],
        ),
        ForbiddenId::Fam1(k) => {
            let mut b = Builder::new();
            add_h(&mut b, k, "", 'c');
            let ak = format!("a_{k}");
            for x in ["x", "y", "z"] {
                b.vertex(x);
                b.edge(ak.clone(), x);
            }
            b.edge("x", "y");
            b.edge("y", "z");
            b.edge("x", "z");
            b.build()
        }
        ForbiddenId::Fam2(k) => {
            let mut b = Builder::new();
            add_h(&mut b, k, "", 'c');
            let ak = format!("a_{k}");
            for x in ["x", "y", "z"] {
                b.vertex(x);
                b.edge(ak.clone(), x);
            }
            b.edge("x", "y");
            b.edge("y", "z");
            b.edge("z", format!("c_{k}"));
            b.build()
        }
        ForbiddenId::Fam3(k) => {
            let mut b = Builder::new();
            add_h(&mut b, k, "", 'c');
            let ak = format!("a_{k}");
            for x in ["x", "y"] {
                b.vertex(x);
                b.edge(ak.clone(), x);
            }
            b.build()
        }
        ForbiddenId::Fam4(k) => {
            let mut b = Builder::new();
            add_h(&mut b, k, "", 'c');
            let (ak, ck, cn) = (format!("a_{k}"), format!("c_{k}"), format!("c_{}", k + 1));
            b.vertex(cn.clone());
            b.vertex("x");
            b.vertex("u");
            b.edge(ak.clone(), cn.clone());
            b.edge(ak, "x");
            b.edge(ck, "x");
            b.edge("x", "u");
            b.edge("x", cn);
            b.build()
        }
        ForbiddenId::Fam5(k, n) => {
            let mut b = Builder::new();
            add_h(&mut b, k, "", 'c');
            add_h(&mut b, n, "'", 'd');
            let (ak, ck) = (format!("a_{k}"), format!("c_{k}"));
            let (an, dn) = (format!("a_{n}'"), format!("d_{n}'"));
            b.edge(ak.clone(), an.clone());
            b.edge(ck, an);
            b.edge(ak, dn);
            b.build()
        }
    }
}

/// All ids whose template has at most `max_size` vertices and whose
/// parameters are at most `max_k`, in search order.
pub fn ids_up_to(max_size: usize, max_k: usize) -> Vec<ForbiddenId> {
    let mut ids = vec![ForbiddenId::K14, ForbiddenId::K23Star, ForbiddenId::K24Star, ForbiddenId::A, ForbiddenId::B];
    for k in 1..=max_k {
        ids.extend([ForbiddenId::Fam1(k), ForbiddenId::Fam2(k), ForbiddenId::Fam3(k), ForbiddenId::Fam4(k)]);
        for n in 1..=max_k {
            ids.push(ForbiddenId::Fam5(k, n));
        }
    }
    ids.retain(|id| id.size() <= max_size);
    ids.sort_by_key(ForbiddenId::search_key);
    ids
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    family: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    embedding: BTreeMap<&'a str, &'a str>,
}

/// A forbidden template found inside a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenCertificate {
    pub id: ForbiddenId,
    /// Template vertex label to host vertex index.
    pub embedding: BTreeMap<String, usize>,
}

impl ForbiddenCertificate {
    pub fn to_json_value(&self, host: &Graph) -> serde_json::Value {
        let embedding: serde_json::Map<String, serde_json::Value> = self
            .embedding
            .iter()
            .map(|(t, &h)| (t.clone(), serde_json::Value::String(host.label(h).to_string())))
            .collect();
        let mut obj = serde_json::Map::new();
        obj.insert("family".into(), self.id.family().into());
        if let Some(k) = self.id.k() {
            obj.insert("k".into(), k.into());
        }
        if let Some(n) = self.id.n() {
            obj.insert("n".into(), n.into());
        }
        obj.insert("embedding".into(), serde_json::Value::Object(embedding));
        serde_json::Value::Object(obj)
    }

    /// Compact JSON with keys in the order family, k, n, embedding.
    pub fn to_json(&self, host: &Graph) -> String {
        let json = CertificateJson {
            family: self.id.family(),
            k: self.id.k(),
            n: self.id.n(),
            embedding: self.embedding.iter().map(|(t, &h)| (t.as_str(), host.label(h))).collect(),
        };
        serde_json::to_string(&json).expect("certificate serializes")
    }

    pub fn from_json(json: &str, host: &Graph) -> Result<ForbiddenCertificate> {
        let v: serde_json::Value = serde_json::from_str(json).map_err(|e| Error::Json(e.to_string()))?;
        let family = v["family"]
            .as_str()
            .ok_or_else(|| Error::Json("certificate needs a `family` string".into()))?;
        let param = |key: &str| v.get(key).and_then(|x| x.as_u64()).map(|x| x as usize);
        let id = ForbiddenId::from_parts(family, param("k"), param("n"))?;
        let map = v["embedding"]
            .as_object()
            .ok_or_else(|| Error::Json("certificate needs an `embedding` object".into()))?;
        let mut embedding = BTreeMap::new();
        for (t, h) in map {
            let h = h
                .as_str()
                .ok_or_else(|| Error::Json(format!("embedding of `{t}` must be a string")))?;
            embedding.insert(t.clone(), host.vertex(h)?);
        }
        Ok(ForbiddenCertificate { id, embedding })
    }
}

/// First forbidden template (in search order) induced in `g`.
pub fn find_forbidden(g: &Graph, max_k: usize) -> Option<ForbiddenCertificate> {
    ids_up_to(g.n(), max_k).into_iter().find_map(|id| {
        let t = generate(id).expect("catalog ids are valid");
        is_induced_isomorphic(g, &t).map(|emb| ForbiddenCertificate {
            id,
            embedding: emb
                .into_iter()
                .enumerate()
                .map(|(i, h)| (t.label(i).to_string(), h))
                .collect(),
        })
    })
}

/// Parameter bound that makes [`find_forbidden`] complete for `g`.
pub fn complete_k(g: &Graph) -> usize {
    g.n().div_ceil(2).max(1)
}

pub fn validate_certificate(g: &Graph, c: &ForbiddenCertificate) -> bool {
    let Ok(t) = generate(c.id) else { return false };
    if c.embedding.len() != t.n() {
        return false;
    }
    let mut emb = Vec::with_capacity(t.n());
    for i in 0..t.n() {
        match c.embedding.get(t.label(i)) {
            Some(&h) if h < g.n() => emb.push(h),
            _ => return false,
        }
    }
    is_induced_embedding(g, &t, &emb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_match_templates() {
        for id in ids_up_to(40, 4) {
            assert_eq!(generate(id).unwrap().n(), id.size(), "{id}");
        }
        for k in 1..=5 {
            assert_eq!(generate_h(k).unwrap().n(), 2 * k + 3);
        }
    }

    #[test]
    fn h_edges() {
        let h2 = generate_h(2).unwrap();
        let e = |a: &str, b: &str| h2.has_edge(h2.vertex(a).unwrap(), h2.vertex(b).unwrap());
        assert!(e("a_2", "c_2"));
        assert!(!e("c_1", "a_2"));
        assert!(e("a_1", "c_2"));
        assert_eq!(h2.edge_count(), 8);
        let h3 = generate_h(3).unwrap();
        assert_eq!(h3.degree(h3.vertex("a_0").unwrap()), 4);
    }

    #[test]
    fn h1_is_k14_star() {
        let h1 = generate_h(1).unwrap();
        let star = small(
            &["x", "u", "v", "w", "y"],
            &[("x", "u"), ("x", "v"), ("x", "w"), ("x", "y"), ("w", "y")],
        )
        .unwrap();
        assert!(is_induced_isomorphic(&h1, &star).is_some() && h1.n() == star.n());
    }

    #[test]
    fn fam5_missing_edge() {
        let g = generate(ForbiddenId::Fam5(1, 1)).unwrap();
        let e = |a: &str, b: &str| g.has_edge(g.vertex(a).unwrap(), g.vertex(b).unwrap());
        assert!(e("a_1", "a_1'") && e("c_1", "a_1'") && e("a_1", "d_1'") && e("a_1", "c_1") && e("a_1'", "d_1'"));
        assert!(!e("c_1", "d_1'"));
    }

    #[test]
    fn id_round_trip() {
        for id in ids_up_to(20, 3) {
            assert_eq!(id.to_string().parse::<ForbiddenId>().unwrap(), id);
        }
        assert!("Fam1(0)".parse::<ForbiddenId>().is_err());
        assert!("Q".parse::<ForbiddenId>().is_err());
        assert!(generate(ForbiddenId::Fam2(0)).is_err());
    }

    #[test]
    fn certificates() {
        let b = generate(ForbiddenId::B).unwrap();
        let c = find_forbidden(&b, 3).unwrap();
        assert_eq!(c.id, ForbiddenId::B);
        assert!(validate_certificate(&b, &c));
        let mut host = b.clone();
        host.add_vertex("extra").unwrap();
        assert!(validate_certificate(&host, &c));
        let mut broken = b.clone();
        let (u, v) = (c.embedding["p17"], c.embedding["p18"]);
        broken.remove_edge(u, v);
        assert!(!validate_certificate(&broken, &c));
        let json = c.to_json(&b);
        assert_eq!(ForbiddenCertificate::from_json(&json, &b).unwrap(), c);
        let claw = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(find_forbidden(&claw, 2).is_none());
    }
}

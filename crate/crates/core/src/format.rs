//! JSON circuit files.
//!
//! Every file carries `format_version`, `family` and `variables`; the rest
//! depends on the family. Complex numbers are `[re, im]` pairs and complex
//! matrices are arrays of rows. Real-valued families (`prob_circuit_pt`,
//! `d_prob_circuit`) store plain numbers. Output has sorted keys and
//! shortest round-trip floats, so writing the same circuit twice gives the
//! same bytes.
//!
//! ```text
//! {
//!   "family": "sd_punc",
//!   "format_version": 1,
//!   "variables": [{"cardinality": 2, "index": 0}, ...],
//!   "tree": {"root": 2, "nodes": [{"id": 0, "kind": "leaf", "var": 0}, ...,
//!            {"children": [0, 1], "id": 2, "kind": "internal", "mode": "kronecker"}]},
//!   "leaves": [{"node": 0, "povm": [[[[1, 0], [0, 0]], ...], ...]}],
//!   "operations": [{"kraus": [...], "node": 2}],
//!   "rho": [[[0.5, 0], [0, 0]], ...]
//! }
//! ```

use std::cell::RefCell;
use std::collections::BTreeSet;

use serde_json::{json, Map, Value};

use crate::circuit::{Circuit, Family};
use crate::d_punc::{DProbCircuit, DProbUnit, DPunc, DUnit, SumEdge};
use crate::families::{NoisePunc, ProbCircuitPT, ProbParam, PsdCircuit};
use crate::linalg::{ComplexMatrix, C64};
use crate::partition::{CombineMode, NodeKind, PartitionCircuit, PartitionNode};
use crate::quantum::{DensityMatrix, Povm, QuantumOperation};
use crate::sd_punc::{SdParam, SdPunc};
use crate::{Error, Result};

pub const FORMAT_VERSION: u64 = 1;

/// Parses and validates a circuit file. With `strict`, unknown fields are
/// rejected.
pub fn parse(text: &str, tol: f64, strict: bool) -> Result<Circuit> {
    let c = read(text, strict)?;
    c.validate(tol).into_result()?;
    Ok(c)
}

/// Parses a circuit file, checking structure (ids, shapes, references) but
/// not the numerical invariants of the family.
pub fn read(text: &str, strict: bool) -> Result<Circuit> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let r = Reader { strict };
    let top = r.object(&value, "file")?;
    let version = r.usize(top.get("format_version")?, "format_version")? as u64;
    if version != FORMAT_VERSION {
        return Err(Error::UnknownVersion(version));
    }
    let family: Family = r.str(top.get("family")?, "family")?.parse()?;
    let cards = r.variables(top.get("variables")?)?;
    let circuit = match family {
        Family::SdPunc => Circuit::SdPunc(r.sd_punc(&top, &cards)?),
        Family::PsdCircuit => Circuit::PsdCircuit(r.psd_circuit(&top, &cards)?),
        Family::ProbCircuitPt => Circuit::ProbCircuitPt(r.prob_circuit(&top, &cards)?),
        Family::DPunc => Circuit::DPunc(r.d_punc(&top, &cards)?),
        Family::DProbCircuit => Circuit::DProbCircuit(r.d_prob_circuit(&top, &cards)?),
        Family::NoisePunc => {
            let q = r.object(top.get("q")?, "q")?;
            let o = r.object(top.get("o")?, "o")?;
            let c = NoisePunc::new(r.prob_circuit(&q, &cards)?, r.sd_punc(&o, &cards)?)?;
            r.finish(q)?;
            r.finish(o)?;
            Circuit::NoisePunc(c)
        }
    };
    r.finish(top)?;
    Ok(circuit)
}

/// Serializes a circuit as pretty-printed JSON with a trailing newline.
pub fn write(c: &Circuit) -> String {
    let mut top = Map::new();
    top.insert("format_version".into(), json!(FORMAT_VERSION));
    top.insert("family".into(), json!(c.family().as_str()));
    top.insert(
        "variables".into(),
        Value::Array(
            c.cardinalities()
                .iter()
                .enumerate()
                .map(|(i, k)| json!({"index": i, "cardinality": k}))
                .collect(),
        ),
    );
    match c {
        Circuit::SdPunc(c) => write_sd(c, &mut top),
        Circuit::PsdCircuit(c) => {
            top.insert("tree".into(), tree_value(c.tree()));
            let mats = c
                .matrices()
                .iter()
                .enumerate()
                .map(|(id, m)| json!({"node": id, "matrix": matrix_value(m)}))
                .collect();
            top.insert("matrices".into(), Value::Array(mats));
            top.insert("rho".into(), matrix_value(c.rho().matrix()));
        }
        Circuit::ProbCircuitPt(c) => write_prob(c, &mut top),
        Circuit::DPunc(c) => {
            let units = c
                .units()
                .iter()
                .enumerate()
                .map(|(id, u)| match u {
                    DUnit::Leaf { var, povm } => json!({
                        "id": id, "kind": "leaf", "var": var,
                        "povm": povm.elements().iter().map(matrix_value).collect::<Vec<_>>(),
                    }),
                    DUnit::Product { left, right } => {
                        json!({"id": id, "kind": "product", "inputs": [left, right]})
                    }
                    DUnit::Sum { edges } => json!({
                        "id": id, "kind": "sum",
                        "edges": edges.iter().map(|e| json!({
                            "input": e.input,
                            "weight": e.weight,
                            "kraus": kraus_value(&e.op),
                        })).collect::<Vec<_>>(),
                    }),
                })
                .collect();
            top.insert("units".into(), Value::Array(units));
            top.insert("root".into(), json!(c.root()));
            top.insert("rho".into(), matrix_value(c.rho().matrix()));
        }
        Circuit::DProbCircuit(c) => {
            let units = c
                .units()
                .iter()
                .enumerate()
                .map(|(id, u)| match u {
                    DProbUnit::Leaf { var, probs } => {
                        json!({"id": id, "kind": "leaf", "var": var, "probs": probs})
                    }
                    DProbUnit::Product { left, right } => {
                        json!({"id": id, "kind": "product", "inputs": [left, right]})
                    }
                    DProbUnit::Sum { edges } => json!({
                        "id": id, "kind": "sum",
                        "edges": edges.iter()
                            .map(|(input, weight)| json!({"input": input, "weight": weight}))
                            .collect::<Vec<_>>(),
                    }),
                })
                .collect();
            top.insert("units".into(), Value::Array(units));
            top.insert("root".into(), json!(c.root()));
        }
        Circuit::NoisePunc(c) => {
            let mut q = Map::new();
            write_prob(c.q(), &mut q);
            let mut o = Map::new();
            write_sd(c.o(), &mut o);
            top.insert("q".into(), Value::Object(q));
            top.insert("o".into(), Value::Object(o));
        }
    }
    let mut out = serde_json::to_string_pretty(&Value::Object(top)).expect("serializable");
    out.push('\n');
    out
}

fn write_sd(c: &SdPunc, out: &mut Map<String, Value>) {
    out.insert("tree".into(), tree_value(c.tree()));
    let mut leaves = Vec::new();
    let mut ops = Vec::new();
    for (id, p) in c.params().iter().enumerate() {
        match p {
            SdParam::Leaf(povm) => leaves.push(json!({
                "node": id,
                "povm": povm.elements().iter().map(matrix_value).collect::<Vec<_>>(),
            })),
            SdParam::Internal(op) => ops.push(json!({"node": id, "kraus": kraus_value(op)})),
        }
    }
    out.insert("leaves".into(), Value::Array(leaves));
    out.insert("operations".into(), Value::Array(ops));
    out.insert("rho".into(), matrix_value(c.rho().matrix()));
}

fn write_prob(c: &ProbCircuitPT, out: &mut Map<String, Value>) {
    out.insert("tree".into(), tree_value(c.tree()));
    let mut tables = Vec::new();
    let mut weights = Vec::new();
    for (id, p) in c.params().iter().enumerate() {
        match p {
            ProbParam::Leaf(t) => tables.push(json!({"node": id, "table": t})),
            ProbParam::Internal(w) => weights.push(json!({"node": id, "matrix": w})),
        }
    }
    out.insert("leaf_tables".into(), Value::Array(tables));
    out.insert("weights".into(), Value::Array(weights));
}

fn tree_value(t: &PartitionCircuit) -> Value {
    let nodes: Vec<Value> = t
        .nodes()
        .iter()
        .map(|n| match n.kind {
            NodeKind::Leaf { var, .. } => json!({"id": n.id, "kind": "leaf", "var": var}),
            NodeKind::Internal { left, right, mode } => json!({
                "id": n.id,
                "kind": "internal",
                "children": [left, right],
                "mode": mode_name(mode),
            }),
        })
        .collect();
    json!({"root": t.root(), "nodes": nodes})
}

fn mode_name(mode: CombineMode) -> &'static str {
    match mode {
        CombineMode::Kronecker => "kronecker",
        CombineMode::Hadamard => "hadamard",
    }
}

fn matrix_value(m: &ComplexMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|z| json!([z.re, z.im])).collect()))
            .collect(),
    )
}

fn kraus_value(op: &QuantumOperation) -> Value {
    Value::Array(op.kraus().iter().map(matrix_value).collect())
}

/// Object whose accessed keys are tracked, so leftovers can be reported.
struct Obj<'a> {
    map: &'a Map<String, Value>,
    path: String,
    used: RefCell<BTreeSet<&'static str>>,
}

impl<'a> Obj<'a> {
    fn get(&self, key: &'static str) -> Result<&'a Value> {
        self.used.borrow_mut().insert(key);
        self.map
            .get(key)
            .ok_or_else(|| Error::Format(format!("{}: missing field `{}`", self.path, key)))
    }

    fn sub(&self, key: &str) -> String {
        format!("{}.{}", self.path, key)
    }
}

struct Reader {
    strict: bool,
}

impl Reader {
    fn finish(&self, o: Obj<'_>) -> Result<()> {
        if !self.strict {
            return Ok(());
        }
        let used = o.used.borrow();
        match o.map.keys().find(|k| !used.contains(k.as_str())) {
            Some(k) => Err(Error::UnknownField(o.sub(k))),
            None => Ok(()),
        }
    }

    fn object<'a>(&self, v: &'a Value, path: &str) -> Result<Obj<'a>> {
        let map = v
            .as_object()
            .ok_or_else(|| Error::Format(format!("{}: expected an object", path)))?;
        Ok(Obj {
            map,
            path: path.to_string(),
            used: RefCell::new(BTreeSet::new()),
        })
    }

    fn array<'a>(&self, v: &'a Value, path: &str) -> Result<&'a [Value]> {
        v.as_array()
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Format(format!("{}: expected an array", path)))
    }

    fn str<'a>(&self, v: &'a Value, path: &str) -> Result<&'a str> {
        v.as_str()
            .ok_or_else(|| Error::Format(format!("{}: expected a string", path)))
    }

    fn usize(&self, v: &Value, path: &str) -> Result<usize> {
        v.as_u64()
            .map(|n| n as usize)
            .ok_or_else(|| Error::Format(format!("{}: expected a nonnegative integer", path)))
    }

    fn f64(&self, v: &Value, path: &str) -> Result<f64> {
        v.as_f64()
            .ok_or_else(|| Error::Format(format!("{}: expected a number", path)))
    }

    fn reals(&self, v: &Value, path: &str) -> Result<Vec<f64>> {
        self.array(v, path)?
            .iter()
            .enumerate()
            .map(|(i, x)| self.f64(x, &format!("{}[{}]", path, i)))
            .collect()
    }

    fn real_rows(&self, v: &Value, path: &str) -> Result<Vec<Vec<f64>>> {
        self.array(v, path)?
            .iter()
            .enumerate()
            .map(|(i, r)| self.reals(r, &format!("{}[{}]", path, i)))
            .collect()
    }

    fn complex(&self, v: &Value, path: &str) -> Result<C64> {
        match self.array(v, path)? {
            [re, im] => Ok(C64::new(self.f64(re, path)?, self.f64(im, path)?)),
            _ => Err(Error::Format(format!("{}: expected [re, im]", path))),
        }
    }

    fn matrix(&self, v: &Value, path: &str) -> Result<ComplexMatrix> {
        let rows = self
            .array(v, path)?
            .iter()
            .enumerate()
            .map(|(i, r)| {
                self.array(r, path)?
                    .iter()
                    .enumerate()
                    .map(|(j, z)| self.complex(z, &format!("{}[{}][{}]", path, i, j)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ComplexMatrix::from_rows(&rows).map_err(|e| Error::Format(format!("{}: {}", path, e)))
    }

    fn matrices(&self, v: &Value, path: &str) -> Result<Vec<ComplexMatrix>> {
        self.array(v, path)?
            .iter()
            .enumerate()
            .map(|(i, m)| self.matrix(m, &format!("{}[{}]", path, i)))
            .collect()
    }

    /// Square, otherwise unchecked; validation reports positivity and trace.
    fn rho(&self, v: &Value, path: &str) -> Result<DensityMatrix> {
        let m = self.matrix(v, path)?;
        if !m.is_square() {
            return Err(Error::Format(format!(
                "{}: density matrix must be square",
                path
            )));
        }
        Ok(DensityMatrix::new_unchecked(m))
    }

    fn variables(&self, v: &Value) -> Result<Vec<usize>> {
        let list = self.array(v, "variables")?;
        let mut cards = vec![None; list.len()];
        for (i, item) in list.iter().enumerate() {
            let path = format!("variables[{}]", i);
            let o = self.object(item, &path)?;
            let index = self.usize(o.get("index")?, &o.sub("index"))?;
            let card = self.usize(o.get("cardinality")?, &o.sub("cardinality"))?;
            self.finish(o)?;
            if card == 0 {
                return Err(Error::Format(format!(
                    "{}: cardinality must be positive",
                    path
                )));
            }
            match cards.get_mut(index) {
                Some(slot @ None) => *slot = Some(card),
                Some(Some(_)) => return Err(Error::DuplicateVariable(index)),
                None => {
                    return Err(Error::Format(format!(
                        "{}: index {} out of range for {} variables",
                        path,
                        index,
                        list.len()
                    )))
                }
            }
        }
        Ok(cards
            .into_iter()
            .map(|c| c.expect("indices cover 0..n"))
            .collect())
    }

    /// Items of a list keyed by `key`, placed by id. Every slot must be filled
    /// at most once.
    fn by_id<'a>(
        &self,
        list: &'a [Value],
        path: &str,
        key: &'static str,
        len: usize,
    ) -> Result<Vec<Option<Obj<'a>>>> {
        let mut slots: Vec<Option<Obj<'a>>> = (0..len).map(|_| None).collect();
        for (i, item) in list.iter().enumerate() {
            let o = self.object(item, &format!("{}[{}]", path, i))?;
            let id = self.usize(o.get(key)?, &o.sub(key))?;
            let slot = slots
                .get_mut(id)
                .ok_or_else(|| Error::Format(format!("{}: {} {} out of range", o.path, key, id)))?;
            if slot.is_some() {
                return Err(Error::Format(format!("{}: duplicate {} {}", path, key, id)));
            }
            *slot = Some(o);
        }
        Ok(slots)
    }

    fn tree(&self, v: &Value, cards: &[usize]) -> Result<PartitionCircuit> {
        let t = self.object(v, "tree")?;
        let root = self.usize(t.get("root")?, "tree.root")?;
        let list = self.array(t.get("nodes")?, "tree.nodes")?;
        let mut nodes = Vec::with_capacity(list.len());
        for (id, slot) in self
            .by_id(list, "tree.nodes", "id", list.len())?
            .into_iter()
            .enumerate()
        {
            let o = slot.ok_or_else(|| Error::Format(format!("tree.nodes: missing id {}", id)))?;
            let kind = match self.str(o.get("kind")?, &o.sub("kind"))? {
                "leaf" => {
                    let var = self.usize(o.get("var")?, &o.sub("var"))?;
                    let cardinality = *cards.get(var).ok_or_else(|| {
                        Error::Format(format!("{}: unknown variable {}", o.path, var))
                    })?;
                    NodeKind::Leaf { var, cardinality }
                }
                "internal" => {
                    let children = self.array(o.get("children")?, &o.sub("children"))?;
                    let [left, right] = children else {
                        return Err(Error::Format(format!("{}: expected two children", o.path)));
                    };
                    let mode = match self.str(o.get("mode")?, &o.sub("mode"))? {
                        "kronecker" => CombineMode::Kronecker,
                        "hadamard" => CombineMode::Hadamard,
                        m => {
                            return Err(Error::Format(format!("{}: unknown mode `{}`", o.path, m)))
                        }
                    };
                    NodeKind::Internal {
                        left: self.usize(left, &o.sub("children"))?,
                        right: self.usize(right, &o.sub("children"))?,
                        mode,
                    }
                }
                k => {
                    return Err(Error::Format(format!(
                        "{}: unknown node kind `{}`",
                        o.path, k
                    )))
                }
            };
            self.finish(o)?;
            nodes.push(PartitionNode { id, kind });
        }
        self.finish(t)?;
        PartitionCircuit::from_nodes(nodes, root, cards.to_vec())
    }

    /// Per-node parameters from a list of leaf entries and a list of internal
    /// entries. `leaf` and `internal` parse one entry each.
    fn node_params<T>(
        &self,
        body: &Obj<'_>,
        tree: &PartitionCircuit,
        (leaf_key, internal_key): (&'static str, &'static str),
        mut leaf: impl FnMut(&Obj<'_>) -> Result<T>,
        mut internal: impl FnMut(&Obj<'_>) -> Result<T>,
    ) -> Result<Vec<T>> {
        let mut out: Vec<Option<T>> = (0..tree.len()).map(|_| None).collect();
        for (key, want_leaf) in [(leaf_key, true), (internal_key, false)] {
            let path = body.sub(key);
            let list = self.array(body.get(key)?, &path)?;
            for (id, o) in self
                .by_id(list, &path, "node", tree.len())?
                .into_iter()
                .enumerate()
            {
                let Some(o) = o else { continue };
                if tree.nodes()[id].is_leaf() != want_leaf {
                    return Err(Error::Format(format!(
                        "{}: node {} is not {}",
                        o.path,
                        id,
                        if want_leaf { "a leaf" } else { "internal" }
                    )));
                }
                out[id] = Some(if want_leaf { leaf(&o)? } else { internal(&o)? });
                self.finish(o)?;
            }
        }
        out.into_iter()
            .enumerate()
            .map(|(id, p)| p.ok_or_else(|| Error::Format(format!("node {} has no parameters", id))))
            .collect()
    }

    fn sd_punc(&self, body: &Obj<'_>, cards: &[usize]) -> Result<SdPunc> {
        let tree = self.tree(body.get("tree")?, cards)?;
        let params = self.node_params(
            body,
            &tree,
            ("leaves", "operations"),
            |o| {
                Ok(SdParam::Leaf(Povm::new(
                    self.matrices(o.get("povm")?, &o.sub("povm"))?,
                )?))
            },
            |o| {
                let kraus = self.matrices(o.get("kraus")?, &o.sub("kraus"))?;
                Ok(SdParam::Internal(QuantumOperation::new(kraus)?))
            },
        )?;
        let rho = self.rho(body.get("rho")?, &body.sub("rho"))?;
        SdPunc::new(tree, params, rho)
    }

    fn psd_circuit(&self, body: &Obj<'_>, cards: &[usize]) -> Result<PsdCircuit> {
        let tree = self.tree(body.get("tree")?, cards)?;
        let list = self.array(body.get("matrices")?, "matrices")?;
        let mut mats = Vec::with_capacity(tree.len());
        for (id, o) in self
            .by_id(list, "matrices", "node", tree.len())?
            .into_iter()
            .enumerate()
        {
            let o = o.ok_or_else(|| Error::Format(format!("node {} has no matrix", id)))?;
            mats.push(self.matrix(o.get("matrix")?, &o.sub("matrix"))?);
            self.finish(o)?;
        }
        let rho = self.rho(body.get("rho")?, "rho")?;
        PsdCircuit::new(tree, mats, rho)
    }

    fn prob_circuit(&self, body: &Obj<'_>, cards: &[usize]) -> Result<ProbCircuitPT> {
        let tree = self.tree(body.get("tree")?, cards)?;
        let params = self.node_params(
            body,
            &tree,
            ("leaf_tables", "weights"),
            |o| {
                Ok(ProbParam::Leaf(
                    self.real_rows(o.get("table")?, &o.sub("table"))?,
                ))
            },
            |o| {
                Ok(ProbParam::Internal(
                    self.real_rows(o.get("matrix")?, &o.sub("matrix"))?,
                ))
            },
        )?;
        ProbCircuitPT::new(tree, params)
    }

    /// Unit objects in id order; `kind` is returned with each.
    fn units<'a>(&self, body: &Obj<'a>) -> Result<Vec<(Obj<'a>, &'a str)>> {
        let list = self.array(body.get("units")?, "units")?;
        self.by_id(list, "units", "id", list.len())?
            .into_iter()
            .enumerate()
            .map(|(id, o)| {
                let o = o.ok_or_else(|| Error::Format(format!("units: missing id {}", id)))?;
                let kind = self.str(o.get("kind")?, &o.sub("kind"))?;
                Ok((o, kind))
            })
            .collect()
    }

    fn pair(&self, o: &Obj<'_>) -> Result<(usize, usize)> {
        match self.array(o.get("inputs")?, &o.sub("inputs"))? {
            [l, r] => Ok((
                self.usize(l, &o.sub("inputs"))?,
                self.usize(r, &o.sub("inputs"))?,
            )),
            _ => Err(Error::Format(format!(
                "{}: a product has two inputs",
                o.path
            ))),
        }
    }

    fn edges<'a>(&self, o: &Obj<'a>) -> Result<Vec<Obj<'a>>> {
        let path = o.sub("edges");
        self.array(o.get("edges")?, &path)?
            .iter()
            .enumerate()
            .map(|(i, e)| self.object(e, &format!("{}[{}]", path, i)))
            .collect()
    }

    fn unknown_kind(o: &Obj<'_>, kind: &str) -> Error {
        Error::Format(format!("{}: unknown unit kind `{}`", o.path, kind))
    }

    fn d_punc(&self, body: &Obj<'_>, cards: &[usize]) -> Result<DPunc> {
        let mut units = Vec::new();
        for (o, kind) in self.units(body)? {
            units.push(match kind {
                "leaf" => DUnit::Leaf {
                    var: self.usize(o.get("var")?, &o.sub("var"))?,
                    povm: Povm::new(self.matrices(o.get("povm")?, &o.sub("povm"))?)?,
                },
                "product" => {
                    let (left, right) = self.pair(&o)?;
                    DUnit::Product { left, right }
                }
                "sum" => {
                    let mut edges = Vec::new();
                    for e in self.edges(&o)? {
                        edges.push(SumEdge {
                            input: self.usize(e.get("input")?, &e.sub("input"))?,
                            weight: self.f64(e.get("weight")?, &e.sub("weight"))?,
                            op: QuantumOperation::new(
                                self.matrices(e.get("kraus")?, &e.sub("kraus"))?,
                            )?,
                        });
                        self.finish(e)?;
                    }
                    DUnit::Sum { edges }
                }
                k => return Err(Self::unknown_kind(&o, k)),
            });
            self.finish(o)?;
        }
        let root = self.usize(body.get("root")?, "root")?;
        let rho = self.rho(body.get("rho")?, "rho")?;
        DPunc::new(cards.to_vec(), units, root, rho)
    }

    fn d_prob_circuit(&self, body: &Obj<'_>, cards: &[usize]) -> Result<DProbCircuit> {
        let mut units = Vec::new();
        for (o, kind) in self.units(body)? {
            units.push(match kind {
                "leaf" => DProbUnit::Leaf {
                    var: self.usize(o.get("var")?, &o.sub("var"))?,
                    probs: self.reals(o.get("probs")?, &o.sub("probs"))?,
                },
                "product" => {
                    let (left, right) = self.pair(&o)?;
                    DProbUnit::Product { left, right }
                }
                "sum" => {
                    let mut edges = Vec::new();
                    for e in self.edges(&o)? {
                        edges.push((
                            self.usize(e.get("input")?, &e.sub("input"))?,
                            self.f64(e.get("weight")?, &e.sub("weight"))?,
                        ));
                        self.finish(e)?;
                    }
                    DProbUnit::Sum { edges }
                }
                k => return Err(Self::unknown_kind(&o, k)),
            });
            self.finish(o)?;
        }
        let root = self.usize(body.get("root")?, "root")?;
        DProbCircuit::new(cards.to_vec(), units, root)
    }
}

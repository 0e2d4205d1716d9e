// SPDX-License-Identifier: Apache-2.0

//! Named-graph triple storage, RDFS closure and the topology rewrite rules.

use std::collections::{BTreeMap, HashMap, HashSet};

use geobench_core::geometry::{relate_matrix, Geometry, TopologicalRelation};
use geobench_core::vocab::{self, parse_geometry_literal, RDFS_SUBCLASS_OF, RDFS_SUBPROPERTY_OF, RDF_TYPE};
use oxrdf::{GraphName, NamedNode, NamedOrBlankNode, Term, Triple};

use crate::Profile;

/// Mutable store contents, keyed by graph.
#[derive(Debug, Default, Clone)]
pub struct Store {
    graphs: HashMap<GraphName, HashSet<Triple>>,
}

impl Store {
    pub fn new() -> Self {
        Store::default()
    }

    /// Replaces a graph; returns `true` when the graph already existed.
    pub fn replace_graph(&mut self, graph: GraphName, triples: impl IntoIterator<Item = Triple>) -> bool {
        self.graphs.insert(graph, triples.into_iter().collect()).is_some()
    }

    pub fn insert(&mut self, graph: GraphName, triples: impl IntoIterator<Item = Triple>) {
        self.graphs.entry(graph).or_default().extend(triples);
    }

    pub fn remove(&mut self, graph: &GraphName, triples: &[Triple]) {
        if let Some(g) = self.graphs.get_mut(graph) {
            for t in triples {
                g.remove(t);
            }
        }
    }

    /// Drops a graph; returns `true` when it existed.
    pub fn drop_graph(&mut self, graph: &GraphName) -> bool {
        self.graphs.remove(graph).is_some()
    }

    pub fn clear(&mut self) {
        self.graphs.clear();
    }

    pub fn contains_graph(&self, graph: &GraphName) -> bool {
        self.graphs.contains_key(graph)
    }

    pub fn graph(&self, graph: &GraphName) -> Option<Vec<Triple>> {
        self.graphs.get(graph).map(|g| sorted(g.iter().cloned()))
    }

    pub fn graph_names(&self) -> Vec<GraphName> {
        let mut names: Vec<GraphName> = self.graphs.keys().cloned().collect();
        names.sort_by_key(|g| g.to_string());
        names
    }

    /// The union of all graphs, in canonical order.
    pub fn asserted(&self) -> Vec<Triple> {
        sorted(self.graphs.values().flatten().cloned())
    }

    pub fn snapshot(&self, profile: &Profile) -> Snapshot {
        Snapshot::build(self.asserted(), profile)
    }
}

fn sorted(triples: impl IntoIterator<Item = Triple>) -> Vec<Triple> {
    let mut keyed: Vec<(String, Triple)> = triples.into_iter().map(|t| (t.to_string(), t)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, t)| t).collect()
}

/// Read-only view used for query evaluation.
#[derive(Debug, Clone, Default)]
pub struct Snapshot {
    pub asserted: Vec<Triple>,
    /// Asserted triples plus everything the profile's entailment adds.
    pub closure: Vec<Triple>,
    by_predicate: HashMap<NamedNode, Vec<usize>>,
    by_subject: HashMap<NamedOrBlankNode, Vec<usize>>,
}

impl Snapshot {
    pub fn build(asserted: Vec<Triple>, profile: &Profile) -> Snapshot {
        let mut closure = if profile.rdfs_entailment {
            rdfs_closure(&asserted)
        } else {
            asserted.clone()
        };
        if profile.query_rewrite {
            let derived = rewrite_triples(&closure);
            closure = sorted(closure.into_iter().chain(derived));
        }
        let mut by_predicate: HashMap<NamedNode, Vec<usize>> = HashMap::new();
        let mut by_subject: HashMap<NamedOrBlankNode, Vec<usize>> = HashMap::new();
        for (i, t) in closure.iter().enumerate() {
            by_predicate.entry(t.predicate.clone()).or_default().push(i);
            by_subject.entry(t.subject.clone()).or_default().push(i);
        }
        Snapshot {
            asserted,
            closure,
            by_predicate,
            by_subject,
        }
    }

    /// Candidate triples for a pattern with an optionally fixed subject and predicate.
    pub fn candidates<'a>(
        &'a self,
        subject: Option<&NamedOrBlankNode>,
        predicate: Option<&NamedNode>,
    ) -> Box<dyn Iterator<Item = &'a Triple> + 'a> {
        let pick = |idx: Option<&'a Vec<usize>>| -> Box<dyn Iterator<Item = &'a Triple> + 'a> {
            Box::new(idx.into_iter().flatten().map(|&i| &self.closure[i]))
        };
        match (subject, predicate) {
            (Some(s), Some(p)) => {
                let bs = self.by_subject.get(s).map_or(0, Vec::len);
                let bp = self.by_predicate.get(p).map_or(0, Vec::len);
                if bs <= bp {
                    pick(self.by_subject.get(s))
                } else {
                    pick(self.by_predicate.get(p))
                }
            }
            (Some(s), None) => pick(self.by_subject.get(s)),
            (None, Some(p)) => pick(self.by_predicate.get(p)),
            (None, None) => Box::new(self.closure.iter()),
        }
    }
}

fn transitive(edges: &[(Term, Term)]) -> BTreeMap<String, (Term, Vec<Term>)> {
    let mut direct: HashMap<&Term, Vec<&Term>> = HashMap::new();
    for (a, b) in edges {
        direct.entry(a).or_default().push(b);
    }
    let mut out = BTreeMap::new();
    for &start in direct.keys() {
        let mut seen: HashSet<&Term> = HashSet::new();
        let mut stack: Vec<&Term> = direct[start].clone();
        while let Some(t) = stack.pop() {
            if seen.insert(t) {
                if let Some(next) = direct.get(t) {
                    stack.extend(next.iter().copied());
                }
            }
        }
        let mut ups: Vec<Term> = seen.into_iter().cloned().collect();
        ups.sort_by_key(|t| t.to_string());
        out.insert(start.to_string(), (start.clone(), ups));
    }
    out
}

fn schema_edges(triples: &[Triple], predicate: &str) -> Vec<(Term, Term)> {
    triples
        .iter()
        .filter(|t| t.predicate.as_str() == predicate)
        .map(|t| (Term::from(t.subject.clone()), t.object.clone()))
        .collect()
}

/// Fixpoint of subclass and subproperty transitivity, type propagation along
/// `rdfs:subClassOf` and triple propagation along `rdfs:subPropertyOf`.
pub fn rdfs_closure(asserted: &[Triple]) -> Vec<Triple> {
    let mut all: HashSet<Triple> = asserted.iter().cloned().collect();
    loop {
        let current: Vec<Triple> = all.iter().cloned().collect();
        let classes = transitive(&schema_edges(&current, RDFS_SUBCLASS_OF));
        let properties = transitive(&schema_edges(&current, RDFS_SUBPROPERTY_OF));
        let before = all.len();

        let sub_class = NamedNode::new_unchecked(RDFS_SUBCLASS_OF);
        let sub_property = NamedNode::new_unchecked(RDFS_SUBPROPERTY_OF);
        for (sub, sups) in classes.values() {
            if let Some(s) = as_subject(sub) {
                for sup in sups {
                    all.insert(Triple::new(s.clone(), sub_class.clone(), sup.clone()));
                }
            }
        }
        for (sub, sups) in properties.values() {
            if let Some(s) = as_subject(sub) {
                for sup in sups {
                    all.insert(Triple::new(s.clone(), sub_property.clone(), sup.clone()));
                }
            }
        }
        let rdf_type = NamedNode::new_unchecked(RDF_TYPE);
        for t in &current {
            if let Some((_, sups)) = properties.get(&Term::from(t.predicate.clone()).to_string()) {
                for sup in sups {
                    if let Term::NamedNode(p) = sup {
                        all.insert(Triple::new(t.subject.clone(), p.clone(), t.object.clone()));
                    }
                }
            }
            if t.predicate == rdf_type {
                if let Some((_, sups)) = classes.get(&t.object.to_string()) {
                    for sup in sups {
                        all.insert(Triple::new(t.subject.clone(), rdf_type.clone(), sup.clone()));
                    }
                }
            }
        }
        if all.len() == before {
            return sorted(all);
        }
    }
}

fn as_subject(t: &Term) -> Option<NamedOrBlankNode> {
    match t {
        Term::NamedNode(n) => Some(n.clone().into()),
        Term::BlankNode(b) => Some(b.clone().into()),
        _ => None,
    }
}

/// The geometry each spatial resource stands for: a geometry's own
/// serialization, or a feature's default geometry.
fn spatial_resources(triples: &[Triple]) -> Vec<(NamedOrBlankNode, Geometry)> {
    let as_wkt = vocab::geo("asWKT");
    let as_gml = vocab::geo("asGML");
    let default = vocab::geo("hasDefaultGeometry");

    let mut literals: BTreeMap<String, (NamedOrBlankNode, Geometry)> = BTreeMap::new();
    // WKT wins over GML when both are present.
    for predicate in [&as_gml, &as_wkt] {
        for t in triples.iter().filter(|t| &t.predicate == predicate) {
            let Term::Literal(lit) = &t.object else { continue };
            if let Some(Ok(parsed)) = parse_geometry_literal(lit.as_ref()) {
                literals.insert(t.subject.to_string(), (t.subject.clone(), parsed.parsed));
            }
        }
    }
    let mut out = literals.clone();
    for t in triples.iter().filter(|t| t.predicate == default) {
        let key = t.subject.to_string();
        if out.contains_key(&key) {
            continue;
        }
        let Some(g) = as_subject(&t.object) else { continue };
        if let Some((_, geometry)) = literals.get(&g.to_string()) {
            out.insert(key, (t.subject.clone(), geometry.clone()));
        }
    }
    out.into_values().filter(|(_, g)| !g.is_empty()).collect()
}

/// Relation triples implied by geometry literals for every ordered pair of
/// spatial resources.
pub fn rewrite_triples(triples: &[Triple]) -> Vec<Triple> {
    let resources = spatial_resources(triples);
    let predicates: Vec<(TopologicalRelation, NamedNode)> = TopologicalRelation::ALL
        .into_iter()
        .map(|r| (r, vocab::geo(r.name())))
        .collect();
    let mut out = Vec::new();
    for (s, a) in &resources {
        for (o, b) in &resources {
            let Ok(matrix) = relate_matrix(a, b) else { continue };
            let (da, db) = (dimension(a), dimension(b));
            for (relation, predicate) in &predicates {
                if relation.holds_for(&matrix, da, db) {
                    out.push(Triple::new(s.clone(), predicate.clone(), Term::from(o.clone())));
                }
            }
        }
    }
    out
}

fn dimension(g: &Geometry) -> u8 {
    g.kind().map_or(0, |k| k.dimension())
}

/// Subject/object pairs matching a topological property: explicit triples
/// together with pairs whose geometries satisfy the relation.
pub fn rewrite_match(relation: TopologicalRelation, snapshot: &Snapshot) -> Vec<(Term, Term)> {
    let predicate = vocab::geo(relation.name());
    let mut pairs: Vec<(Term, Term)> = snapshot
        .candidates(None, Some(&predicate))
        .map(|t| (Term::from(t.subject.clone()), t.object.clone()))
        .collect();
    pairs.extend(
        rewrite_triples(&snapshot.closure)
            .into_iter()
            .filter(|t| t.predicate == predicate)
            .map(|t| (Term::from(t.subject), t.object)),
    );
    pairs.sort_by_key(|(s, o)| (s.to_string(), o.to_string()));
    pairs.dedup();
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use geobench_core::dataset::build_dataset;
    use geobench_core::vocab::{geo, my, rdf, sf};

    fn has(triples: &[Triple], s: NamedNode, p: NamedNode, o: NamedNode) -> bool {
        triples.contains(&Triple::new(s, p, o))
    }

    #[test]
    fn closure_examples() {
        let d = build_dataset();
        let closure = rdfs_closure(&d.all_triples());
        assert!(has(&closure, my("A"), rdf("type"), geo("Feature")));
        assert!(has(&closure, my("A"), rdf("type"), geo("SpatialObject")));
        assert!(has(&closure, my("B"), geo("hasGeometry"), my("BExactGeom")));
        assert!(has(&closure, my("B"), geo("hasDefaultGeometry"), my("BExactGeom")));
        assert!(has(&closure, my("AExactGeom"), rdf("type"), sf("Surface")));
        assert!(!has(&d.all_triples(), my("AExactGeom"), rdf("type"), sf("Surface")));
        // Fixpoint: closing twice adds nothing.
        assert_eq!(rdfs_closure(&closure), closure);
    }

    #[test]
    fn rewrite_includes_explicit_and_derived_pairs() {
        let d = build_dataset();
        let profile = Profile::full();
        let snap = Snapshot::build(d.all_triples(), &profile);
        let pairs = rewrite_match(TopologicalRelation::SfEquals, &snap);
        let pair = |a: &str, b: &str| (Term::from(my(a)), Term::from(my(b)));
        assert!(pairs.contains(&pair("J", "K")));
        assert!(pairs.contains(&pair("L", "M")));
        assert!(pairs.contains(&pair("APoint", "GPoint")));
        let contains = rewrite_match(TopologicalRelation::SfContains, &snap);
        assert!(contains.contains(&pair("A", "B")));
        assert!(contains.contains(&pair("A", "BExactGeom")));
    }

    #[test]
    fn baseline_keeps_explicit_relations_only() {
        let d = build_dataset();
        let snap = Snapshot::build(d.all_triples(), &Profile::baseline());
        let contains = vocab::geo("sfContains");
        let explicit: Vec<&Triple> = snap.closure.iter().filter(|t| t.predicate == contains).collect();
        assert_eq!(explicit.len(), 1);
    }
}

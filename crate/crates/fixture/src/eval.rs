// SPDX-License-Identifier: Apache-2.0

//! Evaluator for the SPARQL subset the benchmark queries use.

use std::cmp::Ordering;
use std::collections::HashMap;

use geobench_core::geometry::{
    geometry_equals, matches_pattern, nontopological_function, relate_matrix, serialize, FunctionArg, FunctionValue,
    Geometry, Serialization, TopologicalRelation,
};
use geobench_core::results::{QueryOutcome, Solutions};
use geobench_core::vocab::{parse_geometry_literal, GEOF, WKT_LITERAL, XSD, XSD_BOOLEAN, XSD_DOUBLE, XSD_INTEGER};
use oxrdf::{Literal, NamedNode, NamedOrBlankNode, Term, Variable};
use spargebra::algebra::{AggregateExpression, AggregateFunction, Expression, Function, GraphPattern, OrderExpression};
use spargebra::term::{GroundTerm, NamedNodePattern, TermPattern, TriplePattern};
use spargebra::{Query, SparqlParser};

use crate::store::Snapshot;
use crate::{Profile, UnknownFunctionPolicy};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown function <{0}>")]
    UnknownFunction(String),
}

type Binding = HashMap<Variable, Term>;

const NON_TOPOLOGICAL: [&str; 11] = [
    "distance",
    "buffer",
    "convexHull",
    "envelope",
    "boundary",
    "intersection",
    "union",
    "difference",
    "symDifference",
    "getSRID",
    "relate",
];

/// Parses and evaluates a query against a snapshot.
pub fn evaluate(snapshot: &Snapshot, profile: &Profile, query_text: &str) -> Result<QueryOutcome, EvalError> {
    let query = SparqlParser::new()
        .parse_query(query_text)
        .map_err(|e| EvalError::Syntax(e.to_string()))?;
    let (pattern, ask) = match &query {
        Query::Select { dataset, pattern, .. } | Query::Ask { dataset, pattern, .. } => {
            if dataset.is_some() {
                return Err(EvalError::Unsupported("FROM clauses".into()));
            }
            (pattern, matches!(query, Query::Ask { .. }))
        }
        Query::Construct { .. } => return Err(EvalError::Unsupported("CONSTRUCT".into())),
        Query::Describe { .. } => return Err(EvalError::Unsupported("DESCRIBE".into())),
    };
    let ev = Evaluator { snapshot, profile };
    match ev.check_pattern(pattern) {
        Ok(()) => {}
        Err(EvalError::UnknownFunction(_)) if profile.unknown_function == UnknownFunctionPolicy::EmptyResult => {
            return Ok(if ask {
                QueryOutcome::Boolean(false)
            } else {
                QueryOutcome::Solutions(Solutions::new(output_variables(pattern, &[])))
            });
        }
        Err(e) => return Err(e),
    }
    let rows = ev.eval(pattern)?;
    if ask {
        return Ok(QueryOutcome::Boolean(!rows.is_empty()));
    }
    let variables = output_variables(pattern, &rows);
    let rows = rows
        .into_iter()
        .map(|b| {
            variables
                .iter()
                .map(|v| b.get(&Variable::new_unchecked(v.as_str())).cloned())
                .collect()
        })
        .collect();
    Ok(QueryOutcome::Solutions(Solutions { variables, rows }))
}

fn output_variables(pattern: &GraphPattern, rows: &[Binding]) -> Vec<String> {
    match pattern {
        GraphPattern::Project { variables, .. } => variables.iter().map(|v| v.as_str().to_owned()).collect(),
        GraphPattern::Slice { inner, .. }
        | GraphPattern::Distinct { inner }
        | GraphPattern::Reduced { inner }
        | GraphPattern::OrderBy { inner, .. } => output_variables(inner, rows),
        _ => {
            let mut vars: Vec<String> = rows
                .iter()
                .flat_map(|b| b.keys().map(|v| v.as_str().to_owned()))
                .collect();
            vars.sort();
            vars.dedup();
            vars
        }
    }
}

struct Evaluator<'a> {
    snapshot: &'a Snapshot,
    profile: &'a Profile,
}

impl Evaluator<'_> {
    fn check_pattern(&self, pattern: &GraphPattern) -> Result<(), EvalError> {
        use GraphPattern as P;
        match pattern {
            P::Bgp { .. } | P::Values { .. } => Ok(()),
            P::Path { path, .. } => match path {
                spargebra::algebra::PropertyPathExpression::NamedNode(_) => Ok(()),
                _ => Err(EvalError::Unsupported("property paths".into())),
            },
            P::Join { left, right } | P::Union { left, right } => {
                self.check_pattern(left)?;
                self.check_pattern(right)
            }
            P::LeftJoin {
                left,
                right,
                expression,
            } => {
                self.check_pattern(left)?;
                self.check_pattern(right)?;
                expression.iter().try_for_each(|e| self.check_expression(e))
            }
            P::Filter { expr, inner } => {
                self.check_expression(expr)?;
                self.check_pattern(inner)
            }
            P::Extend { inner, expression, .. } => {
                self.check_expression(expression)?;
                self.check_pattern(inner)
            }
            P::OrderBy { inner, expression } => {
                for e in expression {
                    let (OrderExpression::Asc(e) | OrderExpression::Desc(e)) = e;
                    self.check_expression(e)?;
                }
                self.check_pattern(inner)
            }
            P::Project { inner, .. } | P::Distinct { inner } | P::Reduced { inner } | P::Slice { inner, .. } => {
                self.check_pattern(inner)
            }
            P::Group { inner, aggregates, .. } => {
                for (_, agg) in aggregates {
                    match agg {
                        AggregateExpression::CountSolutions { .. } => {}
                        AggregateExpression::FunctionCall {
                            name: AggregateFunction::Count,
                            expr,
                            ..
                        } => self.check_expression(expr)?,
                        _ => return Err(EvalError::Unsupported("aggregates other than COUNT".into())),
                    }
                }
                self.check_pattern(inner)
            }
            P::Graph { .. } => Err(EvalError::Unsupported("GRAPH patterns".into())),
            P::Minus { .. } => Err(EvalError::Unsupported("MINUS".into())),
            P::Service { .. } => Err(EvalError::Unsupported("SERVICE".into())),
        }
    }

    fn check_expression(&self, expr: &Expression) -> Result<(), EvalError> {
        use Expression as E;
        match expr {
            E::NamedNode(_) | E::Literal(_) | E::Variable(_) | E::Bound(_) => Ok(()),
            E::Or(a, b)
            | E::And(a, b)
            | E::Equal(a, b)
            | E::SameTerm(a, b)
            | E::Greater(a, b)
            | E::GreaterOrEqual(a, b)
            | E::Less(a, b)
            | E::LessOrEqual(a, b)
            | E::Add(a, b)
            | E::Subtract(a, b)
            | E::Multiply(a, b)
            | E::Divide(a, b) => {
                self.check_expression(a)?;
                self.check_expression(b)
            }
            E::UnaryPlus(a) | E::UnaryMinus(a) | E::Not(a) => self.check_expression(a),
            E::In(a, list) => {
                self.check_expression(a)?;
                list.iter().try_for_each(|e| self.check_expression(e))
            }
            E::If(a, b, c) => {
                self.check_expression(a)?;
                self.check_expression(b)?;
                self.check_expression(c)
            }
            E::Coalesce(list) => list.iter().try_for_each(|e| self.check_expression(e)),
            E::Exists(_) => Err(EvalError::Unsupported("EXISTS".into())),
            E::FunctionCall(f, args) => {
                match f {
                    Function::Str
                    | Function::Lang
                    | Function::Datatype
                    | Function::IsIri
                    | Function::IsBlank
                    | Function::IsLiteral
                    | Function::IsNumeric => {}
                    Function::Custom(name) => {
                        if geof_name(name).is_none() || !self.profile.geo_functions {
                            return Err(EvalError::UnknownFunction(name.as_str().to_owned()));
                        }
                    }
                    other => return Err(EvalError::Unsupported(format!("function {other}"))),
                }
                args.iter().try_for_each(|e| self.check_expression(e))
            }
        }
    }

    fn eval(&self, pattern: &GraphPattern) -> Result<Vec<Binding>, EvalError> {
        use GraphPattern as P;
        Ok(match pattern {
            P::Bgp { patterns } => {
                let mut rows = vec![Binding::new()];
                for tp in patterns {
                    rows = rows.iter().flat_map(|b| self.match_triple(tp, b)).collect();
                }
                rows
            }
            P::Path { subject, path, object } => {
                let spargebra::algebra::PropertyPathExpression::NamedNode(p) = path else {
                    return Err(EvalError::Unsupported("property paths".into()));
                };
                let tp = TriplePattern {
                    subject: subject.clone(),
                    predicate: NamedNodePattern::NamedNode(p.clone()),
                    object: object.clone(),
                };
                self.match_triple(&tp, &Binding::new())
            }
            P::Join { left, right } => {
                let l = self.eval(left)?;
                let r = self.eval(right)?;
                l.iter()
                    .flat_map(|a| r.iter().filter_map(move |b| merge(a, b)))
                    .collect()
            }
            P::LeftJoin {
                left,
                right,
                expression,
            } => {
                let l = self.eval(left)?;
                let r = self.eval(right)?;
                let mut out = Vec::new();
                for a in &l {
                    let mut matched = false;
                    for b in &r {
                        if let Some(m) = merge(a, b) {
                            if expression.as_ref().is_none_or(|e| self.filter(e, &m)) {
                                out.push(m);
                                matched = true;
                            }
                        }
                    }
                    if !matched {
                        out.push(a.clone());
                    }
                }
                out
            }
            P::Union { left, right } => {
                let mut rows = self.eval(left)?;
                rows.extend(self.eval(right)?);
                rows
            }
            P::Filter { expr, inner } => self.eval(inner)?.into_iter().filter(|b| self.filter(expr, b)).collect(),
            P::Extend {
                inner,
                variable,
                expression,
            } => self
                .eval(inner)?
                .into_iter()
                .map(|mut b| {
                    if let Some(v) = self.expr(expression, &b) {
                        b.insert(variable.clone(), v);
                    }
                    b
                })
                .collect(),
            P::Values { variables, bindings } => bindings
                .iter()
                .map(|row| {
                    variables
                        .iter()
                        .zip(row)
                        .filter_map(|(v, t)| t.as_ref().map(|t| (v.clone(), ground(t))))
                        .collect()
                })
                .collect(),
            P::OrderBy { inner, expression } => {
                let rows = self.eval(inner)?;
                let mut keyed: Vec<(Vec<Option<Term>>, Binding)> = rows
                    .into_iter()
                    .map(|b| {
                        let key = expression
                            .iter()
                            .map(|e| {
                                let (OrderExpression::Asc(e) | OrderExpression::Desc(e)) = e;
                                self.expr(e, &b)
                            })
                            .collect();
                        (key, b)
                    })
                    .collect();
                keyed.sort_by(|(ka, _), (kb, _)| {
                    for ((a, b), e) in ka.iter().zip(kb).zip(expression) {
                        let ord = order_terms(a.as_ref(), b.as_ref());
                        let ord = if matches!(e, OrderExpression::Desc(_)) {
                            ord.reverse()
                        } else {
                            ord
                        };
                        if ord != Ordering::Equal {
                            return ord;
                        }
                    }
                    Ordering::Equal
                });
                keyed.into_iter().map(|(_, b)| b).collect()
            }
            P::Project { inner, variables } => self
                .eval(inner)?
                .into_iter()
                .map(|b| b.into_iter().filter(|(v, _)| variables.contains(v)).collect())
                .collect(),
            P::Distinct { inner } | P::Reduced { inner } => {
                let mut seen: Vec<Vec<(Variable, Term)>> = Vec::new();
                let mut out = Vec::new();
                for b in self.eval(inner)? {
                    let mut key: Vec<(Variable, Term)> = b.iter().map(|(v, t)| (v.clone(), t.clone())).collect();
                    key.sort_by(|a, b| a.0.as_str().cmp(b.0.as_str()));
                    if !seen.contains(&key) {
                        seen.push(key);
                        out.push(b);
                    }
                }
                out
            }
            P::Slice { inner, start, length } => {
                let rows = self.eval(inner)?.into_iter().skip(*start);
                match length {
                    Some(n) => rows.take(*n).collect(),
                    None => rows.collect(),
                }
            }
            P::Group {
                inner,
                variables,
                aggregates,
            } => self.group(self.eval(inner)?, variables, aggregates),
            P::Graph { .. } | P::Minus { .. } | P::Service { .. } => {
                return Err(EvalError::Unsupported("pattern outside the supported subset".into()))
            }
        })
    }

    fn group(
        &self,
        rows: Vec<Binding>,
        variables: &[Variable],
        aggregates: &[(Variable, AggregateExpression)],
    ) -> Vec<Binding> {
        let mut groups: Vec<(Vec<Option<Term>>, Vec<Binding>)> = Vec::new();
        for b in rows {
            let key: Vec<Option<Term>> = variables.iter().map(|v| b.get(v).cloned()).collect();
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, members)) => members.push(b),
                None => groups.push((key, vec![b])),
            }
        }
        if groups.is_empty() && variables.is_empty() {
            groups.push((Vec::new(), Vec::new()));
        }
        groups
            .into_iter()
            .map(|(key, members)| {
                let mut out: Binding = variables
                    .iter()
                    .zip(key)
                    .filter_map(|(v, t)| t.map(|t| (v.clone(), t)))
                    .collect();
                for (var, agg) in aggregates {
                    let count = match agg {
                        AggregateExpression::CountSolutions { distinct } => {
                            if *distinct {
                                let mut keys: Vec<Vec<(String, String)>> = members
                                    .iter()
                                    .map(|b| {
                                        let mut k: Vec<(String, String)> =
                                            b.iter().map(|(v, t)| (v.to_string(), t.to_string())).collect();
                                        k.sort();
                                        k
                                    })
                                    .collect();
                                keys.sort();
                                keys.dedup();
                                keys.len()
                            } else {
                                members.len()
                            }
                        }
                        AggregateExpression::FunctionCall { expr, distinct, .. } => {
                            let mut values: Vec<String> = members
                                .iter()
                                .filter_map(|b| self.expr(expr, b))
                                .map(|t| t.to_string())
                                .collect();
                            if *distinct {
                                values.sort();
                                values.dedup();
                            }
                            values.len()
                        }
                    };
                    out.insert(var.clone(), integer(count as i64));
                }
                out
            })
            .collect()
    }

    fn match_triple(&self, tp: &TriplePattern, binding: &Binding) -> Vec<Binding> {
        let subject = resolve(&tp.subject, binding);
        let predicate = match &tp.predicate {
            NamedNodePattern::NamedNode(n) => Some(n.clone()),
            NamedNodePattern::Variable(v) => match binding.get(v) {
                Some(Term::NamedNode(n)) => Some(n.clone()),
                Some(_) => return Vec::new(),
                None => None,
            },
        };
        let subject_key: Option<NamedOrBlankNode> = match &subject {
            Some(Term::NamedNode(n)) => Some(n.clone().into()),
            Some(Term::BlankNode(b)) => Some(b.clone().into()),
            Some(_) => return Vec::new(),
            None => None,
        };
        let mut out = Vec::new();
        for t in self.snapshot.candidates(subject_key.as_ref(), predicate.as_ref()) {
            let mut b = binding.clone();
            if bind(&tp.subject, &Term::from(t.subject.clone()), &mut b)
                && bind_named(&tp.predicate, &t.predicate, &mut b)
                && bind(&tp.object, &t.object, &mut b)
            {
                out.push(b);
            }
        }
        out
    }

    fn filter(&self, expr: &Expression, b: &Binding) -> bool {
        self.expr(expr, b).and_then(|t| ebv(&t)).unwrap_or(false)
    }

    /// `None` stands for an evaluation error.
    fn expr(&self, expr: &Expression, b: &Binding) -> Option<Term> {
        use Expression as E;
        match expr {
            E::NamedNode(n) => Some(n.clone().into()),
            E::Literal(l) => Some(l.clone().into()),
            E::Variable(v) => b.get(v).cloned(),
            E::Bound(v) => Some(boolean(b.contains_key(v))),
            E::Or(x, y) => {
                let x = self.expr(x, b).and_then(|t| ebv(&t));
                let y = self.expr(y, b).and_then(|t| ebv(&t));
                match (x, y) {
                    (Some(true), _) | (_, Some(true)) => Some(boolean(true)),
                    (Some(false), Some(false)) => Some(boolean(false)),
                    _ => None,
                }
            }
            E::And(x, y) => {
                let x = self.expr(x, b).and_then(|t| ebv(&t));
                let y = self.expr(y, b).and_then(|t| ebv(&t));
                match (x, y) {
                    (Some(false), _) | (_, Some(false)) => Some(boolean(false)),
                    (Some(true), Some(true)) => Some(boolean(true)),
                    _ => None,
                }
            }
            E::Not(x) => self.expr(x, b).and_then(|t| ebv(&t)).map(|v| boolean(!v)),
            E::Equal(x, y) => Some(boolean(terms_equal(&self.expr(x, b)?, &self.expr(y, b)?)?)),
            E::SameTerm(x, y) => Some(boolean(self.expr(x, b)? == self.expr(y, b)?)),
            E::Greater(x, y) => self.compare(x, y, b).map(|o| boolean(o == Ordering::Greater)),
            E::GreaterOrEqual(x, y) => self.compare(x, y, b).map(|o| boolean(o != Ordering::Less)),
            E::Less(x, y) => self.compare(x, y, b).map(|o| boolean(o == Ordering::Less)),
            E::LessOrEqual(x, y) => self.compare(x, y, b).map(|o| boolean(o != Ordering::Greater)),
            E::In(x, list) => {
                let x = self.expr(x, b)?;
                let hit = list
                    .iter()
                    .any(|e| self.expr(e, b).and_then(|t| terms_equal(&x, &t)) == Some(true));
                Some(boolean(hit))
            }
            E::Add(x, y) => self.arith(x, y, b, |p, q| p + q),
            E::Subtract(x, y) => self.arith(x, y, b, |p, q| p - q),
            E::Multiply(x, y) => self.arith(x, y, b, |p, q| p * q),
            E::Divide(x, y) => self.arith(x, y, b, |p, q| p / q),
            E::UnaryPlus(x) => {
                let t = self.expr(x, b)?;
                numeric(&t).map(|_| t)
            }
            E::UnaryMinus(x) => numeric(&self.expr(x, b)?).map(|v| double(-v)),
            E::If(c, x, y) => {
                if ebv(&self.expr(c, b)?)? {
                    self.expr(x, b)
                } else {
                    self.expr(y, b)
                }
            }
            E::Coalesce(list) => list.iter().find_map(|e| self.expr(e, b)),
            E::Exists(_) => None,
            E::FunctionCall(f, args) => {
                let args: Vec<Term> = args.iter().map(|a| self.expr(a, b)).collect::<Option<_>>()?;
                self.call(f, &args)
            }
        }
    }

    fn compare(&self, x: &Expression, y: &Expression, b: &Binding) -> Option<Ordering> {
        let (x, y) = (self.expr(x, b)?, self.expr(y, b)?);
        match (numeric(&x), numeric(&y)) {
            (Some(p), Some(q)) => p.partial_cmp(&q),
            _ => match (&x, &y) {
                (Term::Literal(p), Term::Literal(q)) if p.datatype() == q.datatype() => Some(p.value().cmp(q.value())),
                _ => None,
            },
        }
    }

    fn arith(&self, x: &Expression, y: &Expression, b: &Binding, op: impl Fn(f64, f64) -> f64) -> Option<Term> {
        let (x, y) = (self.expr(x, b)?, self.expr(y, b)?);
        let (p, q) = (numeric(&x)?, numeric(&y)?);
        let both_integer = [&x, &y]
            .iter()
            .all(|t| matches!(t, Term::Literal(l) if l.datatype().as_str() == XSD_INTEGER));
        let v = op(p, q);
        if both_integer && v.fract() == 0.0 && v.is_finite() {
            Some(integer(v as i64))
        } else {
            Some(double(v))
        }
    }

    fn call(&self, f: &Function, args: &[Term]) -> Option<Term> {
        match (f, args) {
            (Function::Str, [t]) => match t {
                Term::NamedNode(n) => Some(Literal::new_simple_literal(n.as_str()).into()),
                Term::Literal(l) => Some(Literal::new_simple_literal(l.value()).into()),
                Term::BlankNode(_) => None,
            },
            (Function::Lang, [Term::Literal(l)]) => {
                Some(Literal::new_simple_literal(l.language().unwrap_or("")).into())
            }
            (Function::Datatype, [Term::Literal(l)]) => Some(l.datatype().into_owned().into()),
            (Function::IsIri, [t]) => Some(boolean(matches!(t, Term::NamedNode(_)))),
            (Function::IsBlank, [t]) => Some(boolean(matches!(t, Term::BlankNode(_)))),
            (Function::IsLiteral, [t]) => Some(boolean(matches!(t, Term::Literal(_)))),
            (Function::IsNumeric, [t]) => Some(boolean(numeric(t).is_some())),
            (Function::Custom(name), _) => self.geof(geof_name(name)?, args),
            _ => None,
        }
    }

    fn geof(&self, name: &str, args: &[Term]) -> Option<Term> {
        if let Ok(relation) = name.parse::<TopologicalRelation>() {
            let [a, b] = args else { return None };
            let (a, b) = (geometry_arg(a)?, geometry_arg(b)?);
            let holds = if a.is_empty() || b.is_empty() {
                if !relation.is_equality() {
                    return None;
                }
                geometry_equals(&a, &b, 0.0)
            } else {
                relation.holds(&a, &b).ok()?
            };
            return Some(boolean(holds));
        }
        if name == "relate" {
            let [a, b, Term::Literal(pattern)] = args else {
                return None;
            };
            let matrix = relate_matrix(&geometry_arg(a)?, &geometry_arg(b)?).ok()?;
            return matches_pattern(&matrix, pattern.value()).ok().map(boolean);
        }
        let converted: Vec<FunctionArg> = args
            .iter()
            .map(|t| match t {
                Term::NamedNode(n) => Some(FunctionArg::Iri(n.as_str().to_owned())),
                Term::Literal(l) => match numeric(t) {
                    Some(v) => Some(FunctionArg::Number(v)),
                    None => parse_geometry_literal(l.as_ref())?
                        .ok()
                        .map(|g| FunctionArg::Geometry(g.parsed)),
                },
                Term::BlankNode(_) => None,
            })
            .collect::<Option<_>>()?;
        match nontopological_function(name, &converted).ok()? {
            FunctionValue::Geometry(g) => Some(wkt_literal(&g)),
            FunctionValue::Number(v) => Some(double(v)),
            FunctionValue::Iri(iri) => NamedNode::new(iri).ok().map(Term::from),
        }
    }
}

fn geof_name(name: &NamedNode) -> Option<&str> {
    let local = name.as_str().strip_prefix(GEOF)?;
    (local.parse::<TopologicalRelation>().is_ok() || NON_TOPOLOGICAL.contains(&local)).then_some(local)
}

fn geometry_arg(t: &Term) -> Option<Geometry> {
    let Term::Literal(l) = t else { return None };
    parse_geometry_literal(l.as_ref())?.ok().map(|g| g.parsed)
}

fn wkt_literal(g: &Geometry) -> Term {
    let text = serialize(g, Serialization::Wkt, !g.crs.is_crs84());
    Literal::new_typed_literal(text, NamedNode::new_unchecked(WKT_LITERAL)).into()
}

fn ground(t: &GroundTerm) -> Term {
    match t {
        GroundTerm::NamedNode(n) => n.clone().into(),
        GroundTerm::Literal(l) => l.clone().into(),
    }
}

fn resolve(p: &TermPattern, b: &Binding) -> Option<Term> {
    match p {
        TermPattern::NamedNode(n) => Some(n.clone().into()),
        TermPattern::Literal(l) => Some(l.clone().into()),
        TermPattern::Variable(v) => b.get(v).cloned(),
        // Blank nodes in queries act as variables.
        TermPattern::BlankNode(_) => None,
    }
}

fn bind(p: &TermPattern, value: &Term, b: &mut Binding) -> bool {
    match p {
        TermPattern::NamedNode(n) => matches!(value, Term::NamedNode(v) if v == n),
        TermPattern::Literal(l) => matches!(value, Term::Literal(v) if v == l),
        TermPattern::Variable(v) => bind_var(v, value, b),
        TermPattern::BlankNode(bn) => bind_var(&Variable::new_unchecked(format!("_bnode_{}", bn.as_str())), value, b),
    }
}

fn bind_named(p: &NamedNodePattern, value: &NamedNode, b: &mut Binding) -> bool {
    match p {
        NamedNodePattern::NamedNode(n) => n == value,
        NamedNodePattern::Variable(v) => bind_var(v, &value.clone().into(), b),
    }
}

fn bind_var(v: &Variable, value: &Term, b: &mut Binding) -> bool {
    match b.get(v) {
        Some(existing) => existing == value,
        None => {
            b.insert(v.clone(), value.clone());
            true
        }
    }
}

fn merge(a: &Binding, b: &Binding) -> Option<Binding> {
    let mut out = a.clone();
    for (v, t) in b {
        if !bind_var(v, t, &mut out) {
            return None;
        }
    }
    Some(out)
}

fn boolean(v: bool) -> Term {
    Literal::new_typed_literal(if v { "true" } else { "false" }, NamedNode::new_unchecked(XSD_BOOLEAN)).into()
}

fn integer(v: i64) -> Term {
    Literal::new_typed_literal(v.to_string(), NamedNode::new_unchecked(XSD_INTEGER)).into()
}

fn double(v: f64) -> Term {
    Literal::new_typed_literal(format!("{v:?}"), NamedNode::new_unchecked(XSD_DOUBLE)).into()
}

const NUMERIC_TYPES: [&str; 16] = [
    "integer",
    "decimal",
    "double",
    "float",
    "int",
    "long",
    "short",
    "byte",
    "nonNegativeInteger",
    "positiveInteger",
    "nonPositiveInteger",
    "negativeInteger",
    "unsignedInt",
    "unsignedLong",
    "unsignedShort",
    "unsignedByte",
];

fn numeric(t: &Term) -> Option<f64> {
    let Term::Literal(l) = t else { return None };
    let local = l.datatype().as_str().strip_prefix(XSD)?;
    if !NUMERIC_TYPES.contains(&local) {
        return None;
    }
    match l.value().trim() {
        "INF" | "+INF" => Some(f64::INFINITY),
        "-INF" => Some(f64::NEG_INFINITY),
        v => v.parse().ok(),
    }
}

fn ebv(t: &Term) -> Option<bool> {
    let Term::Literal(l) = t else { return None };
    if l.datatype().as_str() == XSD_BOOLEAN {
        return match l.value() {
            "true" | "1" => Some(true),
            "false" | "0" => Some(false),
            _ => None,
        };
    }
    if let Some(v) = numeric(t) {
        return Some(v != 0.0 && !v.is_nan());
    }
    Some(!l.value().is_empty())
}

/// `=` on RDF terms: numbers by value, everything else by identity.
fn terms_equal(a: &Term, b: &Term) -> Option<bool> {
    if let (Some(p), Some(q)) = (numeric(a), numeric(b)) {
        return Some(p == q);
    }
    Some(a == b)
}

fn kind_rank(t: Option<&Term>) -> u8 {
    match t {
        None => 0,
        Some(Term::BlankNode(_)) => 1,
        Some(Term::NamedNode(_)) => 2,
        Some(Term::Literal(_)) => 3,
    }
}

/// ORDER BY collation: unbound, blank nodes, IRIs, then literals; numbers by
/// value, other text by codepoint.
pub fn order_terms(a: Option<&Term>, b: Option<&Term>) -> Ordering {
    kind_rank(a).cmp(&kind_rank(b)).then_with(|| match (a, b) {
        (Some(Term::BlankNode(x)), Some(Term::BlankNode(y))) => x.as_str().cmp(y.as_str()),
        (Some(Term::NamedNode(x)), Some(Term::NamedNode(y))) => x.as_str().cmp(y.as_str()),
        (Some(x @ Term::Literal(p)), Some(y @ Term::Literal(q))) => match (numeric(x), numeric(y)) {
            (Some(m), Some(n)) => m.partial_cmp(&n).unwrap_or(Ordering::Equal),
            _ => p
                .value()
                .cmp(q.value())
                .then_with(|| p.datatype().as_str().cmp(q.datatype().as_str()))
                .then_with(|| p.language().cmp(&q.language())),
        },
        _ => Ordering::Equal,
    })
}

// SPDX-License-Identifier: Apache-2.0

//! A minimal namespace-resolved XML tree, enough for GML literals and
//! canonical comparison of them.

use quick_xml::events::Event;
use quick_xml::name::ResolveResult;
use quick_xml::NsReader;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("malformed XML at byte {position}: {message}")]
pub struct XmlError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attribute {
    pub namespace: Option<String>,
    pub local: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Element(Element),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub namespace: Option<String>,
    pub local: String,
    /// Attributes other than namespace declarations, in document order.
    pub attributes: Vec<Attribute>,
    pub children: Vec<Node>,
}

impl Element {
    pub fn attribute(&self, local: &str) -> Option<&str> {
        self.attributes
            .iter()
            .find(|a| a.namespace.is_none() && a.local == local)
            .map(|a| a.value.as_str())
    }

    pub fn child_elements(&self) -> impl Iterator<Item = &Element> {
        self.children.iter().filter_map(|n| match n {
            Node::Element(e) => Some(e),
            Node::Text(_) => None,
        })
    }

    /// Concatenated character data of the direct children.
    pub fn text(&self) -> String {
        self.children
            .iter()
            .filter_map(|n| match n {
                Node::Text(t) => Some(t.as_str()),
                Node::Element(_) => None,
            })
            .collect()
    }
}

fn namespace_of(result: ResolveResult<'_>, position: usize) -> Result<Option<String>, XmlError> {
    match result {
        ResolveResult::Unbound => Ok(None),
        ResolveResult::Bound(ns) => Ok(Some(String::from_utf8_lossy(ns.as_ref()).into_owned())),
        ResolveResult::Unknown(prefix) => Err(XmlError {
            position,
            message: format!("undeclared prefix {:?}", String::from_utf8_lossy(&prefix)),
        }),
    }
}

/// Parses a document holding exactly one root element.
pub fn parse_element(text: &str) -> Result<Element, XmlError> {
    let mut reader = NsReader::from_str(text);
    let mut stack: Vec<Element> = Vec::new();
    let mut root: Option<Element> = None;

    loop {
        let position = reader.buffer_position() as usize;
        let err = |message: String| XmlError { position, message };
        let (resolved, event) = reader.read_resolved_event().map_err(|e| err(e.to_string()))?;
        match event {
            Event::Start(ref start) | Event::Empty(ref start) => {
                if root.is_some() {
                    return Err(err("content after the root element".into()));
                }
                let namespace = namespace_of(resolved, position)?;
                let local = String::from_utf8_lossy(start.local_name().as_ref()).into_owned();
                let mut attributes = Vec::new();
                for attr in start.attributes() {
                    let attr = attr.map_err(|e| err(e.to_string()))?;
                    let key = attr.key;
                    if key.as_ref() == b"xmlns" || key.as_ref().starts_with(b"xmlns:") {
                        continue;
                    }
                    let (ns, local) = reader.resolve_attribute(key);
                    let value = attr.unescape_value().map_err(|e| err(e.to_string()))?;
                    attributes.push(Attribute {
                        namespace: namespace_of(ns, position)?,
                        local: String::from_utf8_lossy(local.as_ref()).into_owned(),
                        value: value.into_owned(),
                    });
                }
                let element = Element {
                    namespace,
                    local,
                    attributes,
                    children: Vec::new(),
                };
                if matches!(event, Event::Empty(_)) {
                    close(element, &mut stack, &mut root);
                } else {
                    stack.push(element);
                }
            }
            Event::End(_) => {
                let element = stack.pop().ok_or_else(|| err("unexpected end tag".into()))?;
                close(element, &mut stack, &mut root);
            }
            Event::Text(t) => {
                let t = t.unescape().map_err(|e| err(e.to_string()))?;
                match stack.last_mut() {
                    Some(parent) => parent.children.push(Node::Text(t.into_owned())),
                    None if t.trim().is_empty() => {}
                    None => return Err(err("text outside the root element".into())),
                }
            }
            Event::CData(c) => {
                let t = String::from_utf8_lossy(&c.into_inner()).into_owned();
                match stack.last_mut() {
                    Some(parent) => parent.children.push(Node::Text(t)),
                    None => return Err(err("character data outside the root element".into())),
                }
            }
            Event::Eof => {
                if !stack.is_empty() {
                    return Err(err("unclosed element".into()));
                }
                return root.ok_or_else(|| err("no root element".into()));
            }
            Event::Comment(_) | Event::Decl(_) | Event::PI(_) | Event::DocType(_) => {}
        }
    }
}

fn close(element: Element, stack: &mut [Element], root: &mut Option<Element>) {
    match stack.last_mut() {
        Some(parent) => parent.children.push(Node::Element(element)),
        None => *root = Some(element),
    }
}

pub(crate) fn escape_text(text: &str) -> String {
    quick_xml::escape::escape(text).into_owned()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolves_namespaces_and_attributes() {
        let e = parse_element(r#"<g:Point xmlns:g="urn:x" srsName="urn:crs"><g:pos>1 2</g:pos></g:Point>"#).unwrap();
        assert_eq!(e.namespace.as_deref(), Some("urn:x"));
        assert_eq!(e.local, "Point");
        assert_eq!(e.attribute("srsName"), Some("urn:crs"));
        let pos = e.child_elements().next().unwrap();
        assert_eq!(pos.namespace.as_deref(), Some("urn:x"));
        assert_eq!(pos.text(), "1 2");
    }

    #[test]
    fn rejects_malformed_documents() {
        assert!(parse_element("<a><b></a>").is_err());
        assert!(parse_element("<a>").is_err());
        assert!(parse_element("<a/><b/>").is_err());
        assert!(parse_element("").is_err());
        assert!(parse_element("<p:a/>").is_err());
    }
}

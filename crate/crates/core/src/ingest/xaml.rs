use quick_xml::events::{BytesStart, Event};
use quick_xml::name::ResolveResult;
use quick_xml::NsReader;
use serde::{Deserialize, Serialize};

use super::Token;
use crate::error::{Error, Result};

/// Namespace URI UiPath binds to the `ui` prefix.
pub const UIPATH_ACTIVITIES_NS: &str = "http://schemas.uipath.com/workflow/activities";

const DEFAULT_CORE_ACTIVITIES: &[&str] = &[
    "If",
    "IfElseIf",
    "Switch",
    "ForEach",
    "ParallelForEach",
    "While",
    "DoWhile",
    "InterruptibleWhile",
    "InterruptibleDoWhile",
    "WriteLine",
    "LogMessage",
    "AppendLine",
    "Assign",
    "Delay",
    "Throw",
    "Rethrow",
    "TryCatch",
    "InvokeMethod",
];

const DEFAULT_STRUCTURAL: &[&str] = &[
    "Sequence",
    "Flowchart",
    "FlowStep",
    "FlowDecision",
    "FlowSwitch",
    "StateMachine",
    "State",
    "Transition",
    "Variables",
    "Variable",
    "ViewState",
    "WorkflowViewStateService",
    "Annotation",
    "Members",
    "Property",
    "Activity",
    "ActivityAction",
    "ActivityFunc",
    "DelegateInArgument",
    "DelegateOutArgument",
    "InArgument",
    "OutArgument",
    "InOutArgument",
    "Catch",
    "Target",
    "TargetAnchorable",
    "TargetApp",
    "TextExpression",
];

/// Which XML elements count as activities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionConfig {
    /// Namespace prefixes whose elements are activities (default `ui`).
    pub activity_prefixes: Vec<String>,
    /// Namespace URIs whose elements are activities, whatever their prefix.
    pub activity_namespaces: Vec<String>,
    /// Local names accepted on un-prefixed elements (workflow core activities).
    pub core_activities: Vec<String>,
    /// Local names that are never activities. Their children are still visited.
    pub structural: Vec<String>,
    /// File extension picked up by directory scans, without the dot.
    pub extension: String,
}

impl Default for ExtractionConfig {
    fn default() -> Self {
        let owned = |names: &[&str]| names.iter().map(|s| s.to_string()).collect();
        ExtractionConfig {
            activity_prefixes: vec!["ui".to_string()],
            activity_namespaces: vec![UIPATH_ACTIVITIES_NS.to_string()],
            core_activities: owned(DEFAULT_CORE_ACTIVITIES),
            structural: owned(DEFAULT_STRUCTURAL),
            extension: "xaml".to_string(),
        }
    }
}

impl ExtractionConfig {
    fn is_activity(&self, prefix: Option<&str>, namespace: Option<&str>, local: &str) -> bool {
        // Property elements such as `If.Then` are never activities.
        if local.contains('.') || self.structural.iter().any(|s| s == local) {
            return false;
        }
        if namespace.is_some_and(|ns| self.activity_namespaces.iter().any(|a| a == ns)) {
            return true;
        }
        match prefix {
            Some(p) => self.activity_prefixes.iter().any(|a| a == p),
            None => self.core_activities.iter().any(|a| a == local),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtractWarning {
    /// The document parsed but contained no activities.
    NoActivities,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Extraction {
    pub tokens: Vec<Token>,
    pub warnings: Vec<ExtractWarning>,
}

/// Extracts activity tokens from a XAML document in pre-order.
///
/// Every start or empty tag is inspected in document order, so nested
/// activities come out flattened with parents ahead of their children.
/// Elements that are not activities are skipped but their subtrees are not.
pub fn extract_activities(xaml: &str, config: &ExtractionConfig) -> Result<Extraction> {
    let mut reader = NsReader::from_str(xaml);
    reader.config_mut().trim_text(true);

    let mut tokens = Vec::new();
    let mut depth = 0usize;
    let mut seen_root = false;

    loop {
        let tag_offset = reader.buffer_position();
        let (namespace, event) = match reader.read_resolved_event() {
            Ok((resolved, event)) => {
                let namespace = match resolved {
                    ResolveResult::Bound(ns) => Some(String::from_utf8_lossy(ns.into_inner()).into_owned()),
                    _ => None,
                };
                (namespace, event)
            }
            Err(e) => {
                return Err(Error::Xml {
                    offset: reader.error_position(),
                    message: e.to_string(),
                })
            }
        };
        let (start, is_empty) = match event {
            Event::Start(e) => (e, false),
            Event::Empty(e) => (e, true),
            Event::End(_) => {
                depth = depth.saturating_sub(1);
                continue;
            }
            Event::Eof => break,
            _ => continue,
        };
        if depth == 0 && seen_root {
            return Err(Error::Xml {
                offset: reader.buffer_position(),
                message: "multiple root elements".to_string(),
            });
        }
        seen_root = true;
        if !is_empty {
            depth += 1;
        }

        let qname = start.name();
        let prefix = qname
            .prefix()
            .map(|p| String::from_utf8_lossy(p.into_inner()).into_owned());
        let local = String::from_utf8_lossy(start.local_name().into_inner()).into_owned();

        let type_args = type_arguments(&start, tag_offset)?;
        if config.is_activity(prefix.as_deref(), namespace.as_deref(), &local) {
            let name = match type_args {
                Some(args) => format!("{local}<{args}>"),
                None => local,
            };
            tokens.push(Token::new(name)?);
        }
    }

    if depth != 0 {
        return Err(Error::Xml {
            offset: reader.buffer_position(),
            message: "unexpected end of document: unclosed element".to_string(),
        });
    }
    if !seen_root {
        return Err(Error::Xml {
            offset: reader.buffer_position(),
            message: "no root element".to_string(),
        });
    }

    let warnings = if tokens.is_empty() {
        vec![ExtractWarning::NoActivities]
    } else {
        Vec::new()
    };
    Ok(Extraction { tokens, warnings })
}

/// Reads every attribute (so malformed ones are reported) and renders the
/// type-arguments attribute if there is one.
fn type_arguments(start: &BytesStart<'_>, offset: u64) -> Result<Option<String>> {
    let xml_error = |message: String| Error::Xml { offset, message };
    let mut rendered = None;
    for attr in start.attributes() {
        let attr = attr.map_err(|e| xml_error(e.to_string()))?;
        if attr.key.local_name().as_ref() != b"TypeArguments" {
            continue;
        }
        let value = attr.unescape_value().map_err(|e| xml_error(e.to_string()))?;
        let args = render_type_arguments(&value);
        if !args.is_empty() {
            rendered = Some(args);
        }
    }
    Ok(rendered)
}

/// `x:String, scg:List(x:Int32)` becomes `String,List(Int32)`.
fn render_type_arguments(value: &str) -> String {
    let stripped = strip_prefixes(value);
    let mut args = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for c in stripped.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                args.push(std::mem::take(&mut current));
                continue;
            }
            _ => {}
        }
        current.push(c);
    }
    args.push(current);
    args.iter()
        .map(|a| a.trim())
        .filter(|a| !a.is_empty())
        .collect::<Vec<_>>()
        .join(",")
}

fn strip_prefixes(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    let mut ident = String::new();
    for c in value.chars() {
        if c.is_alphanumeric() || c == '_' || c == '.' {
            ident.push(c);
        } else if c == ':' {
            ident.clear();
        } else {
            out.push_str(&ident);
            ident.clear();
            out.push(c);
        }
    }
    out.push_str(&ident);
    out
}

//! Writes small UiPath-style workflows for end-to-end tests.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const OPEN: &str = concat!(
    r#"<Activity x:Class="Main" "#,
    r#"xmlns="http://schemas.microsoft.com/netfx/2009/xaml/activities" "#,
    r#"xmlns:sap2010="http://schemas.microsoft.com/netfx/2010/xaml/activities/presentation" "#,
    r#"xmlns:ui="http://schemas.uipath.com/workflow/activities" "#,
    r#"xmlns:x="http://schemas.microsoft.com/winfx/2006/xaml">"#,
    "\n"
);

/// Un-prefixed names in the workflow core namespace.
const CORE: &[&str] = &[
    "If",
    "IfElseIf",
    "Switch",
    "ForEach",
    "ParallelForEach",
    "WriteLine",
    "Assign",
    "Delay",
];

pub enum Node {
    Leaf(String),
    /// An activity whose body holds more activities, e.g. an `If`.
    Body(String, Vec<Node>),
}

pub fn leaf(name: &str) -> Node {
    Node::Leaf(name.to_string())
}

fn open_tag(name: &str) -> (String, String) {
    let (local, generic) = match name.split_once('<') {
        Some((local, rest)) => (local, Some(rest.trim_end_matches('>'))),
        None => (name, None),
    };
    let tag = if CORE.contains(&local) {
        local.to_string()
    } else {
        format!("ui:{local}")
    };
    let attrs = match generic {
        Some(g) => format!(r#" x:TypeArguments="x:{g}""#),
        None => String::new(),
    };
    (tag, attrs)
}

fn render(node: &Node, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match node {
        Node::Leaf(name) => {
            let (tag, attrs) = open_tag(name);
            out.push_str(&format!("{pad}<{tag}{attrs} DisplayName=\"{name}\" />\n"));
        }
        Node::Body(name, children) => {
            let (tag, attrs) = open_tag(name);
            let slot = if tag.starts_with("If") { "Then" } else { "Body" };
            out.push_str(&format!("{pad}<{tag}{attrs} DisplayName=\"{name}\">\n"));
            out.push_str(&format!("{pad}  <{tag}.{slot}>\n{pad}    <Sequence>\n"));
            for child in children {
                render(child, depth + 3, out);
            }
            out.push_str(&format!(
                "{pad}    </Sequence>\n{pad}  </{tag}.{slot}>\n{pad}</{tag}>\n"
            ));
        }
    }
}

pub fn workflow(nodes: &[Node]) -> String {
    let mut out = String::from(OPEN);
    out.push_str("  <Sequence DisplayName=\"Main\">\n    <Sequence.Variables />\n");
    for node in nodes {
        render(node, 2, &mut out);
    }
    out.push_str("  </Sequence>\n</Activity>\n");
    out
}

pub fn write_workflow(dir: &Path, name: &str, nodes: &[Node]) -> PathBuf {
    let path = dir.join(name);
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).unwrap();
    }
    fs::write(&path, workflow(nodes)).unwrap();
    path
}

/// Flat workflow from plain activity names.
pub fn write_flat(dir: &Path, name: &str, activities: &[&str]) -> PathBuf {
    let nodes: Vec<Node> = activities.iter().map(|a| leaf(a)).collect();
    write_workflow(dir, name, &nodes)
}

pub fn rpaclone<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_rpaclone"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/uipath_samples")
}

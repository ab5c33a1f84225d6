//! JSON documents for actions, maps, paths, homotopies and subgroups.
//!
//! Documents refer to points, indices, group elements and groups by label,
//! so they stay readable and diffable. Errors name the offending field as a
//! path such as `indices[2].group`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{GlobalAction, LocalAction};
use crate::algebra::{FiniteGroup, GroupAction};
use crate::homotopy::{GridHomotopy, HomotopyMode, Path, Pi1Presentation, Word};

pub const ACTION_FORMAT: &str = "gact/1";
pub const MAP_FORMAT: &str = "gact-map/1";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: {message}")]
    Schema { field: String, message: String },
}

fn schema(field: impl Into<String>, message: impl Into<String>) -> IoError {
    IoError::Schema { field: field.into(), message: message.into() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDocument {
    pub name: String,
    pub elements: Vec<String>,
    /// `table[a][b]` is the label of `a * b`.
    pub table: Vec<Vec<String>>,
    pub identity: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexDocument {
    pub name: String,
    pub points: Vec<String>,
    pub group: String,
    /// `action[g][i]` is the label of `g` applied to `points[i]`.
    pub action: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDocument {
    pub source: String,
    pub target: String,
    /// Image label of each source group element, in element order.
    pub map: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDocument {
    pub format: String,
    pub groups: Vec<GroupDocument>,
    pub points: Vec<String>,
    pub indices: Vec<IndexDocument>,
    /// Related index pairs `[lower, upper]`.
    #[serde(default)]
    pub relation: Vec<[String; 2]>,
    /// Structure maps; identity maps on reflexive pairs may be omitted.
    #[serde(default)]
    pub homs: Vec<HomDocument>,
}

fn lookup(labels: &[String]) -> HashMap<&str, usize> {
    labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect()
}

fn group_from(doc: &GroupDocument, field: &str) -> Result<FiniteGroup, IoError> {
    let ids = lookup(&doc.elements);
    if ids.len() != doc.elements.len() {
        return Err(schema(format!("{field}.elements"), "duplicate element label"));
    }
    let mut table = Vec::with_capacity(doc.table.len());
    for (a, row) in doc.table.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (b, label) in row.iter().enumerate() {
            let id = ids
                .get(label.as_str())
                .ok_or_else(|| schema(format!("{field}.table[{a}][{b}]"), format!("unknown element '{label}'")))?;
            out.push(*id);
        }
        table.push(out);
    }
    let identity = *ids
        .get(doc.identity.as_str())
        .ok_or_else(|| schema(format!("{field}.identity"), format!("unknown element '{}'", doc.identity)))?;
    FiniteGroup::new(doc.name.clone(), doc.elements.clone(), table, identity)
        .map_err(|e| schema(field, e.to_string()))
}

impl ActionDocument {
    /// Builds the action; axioms are not checked here (see
    /// [`GlobalAction::validate`]).
    pub fn to_action(&self) -> Result<GlobalAction, IoError> {
        if self.format != ACTION_FORMAT {
            return Err(schema("format", format!("expected '{ACTION_FORMAT}', found '{}'", self.format)));
        }
        let mut groups: HashMap<&str, FiniteGroup> = HashMap::new();
        for (i, g) in self.groups.iter().enumerate() {
            let field = format!("groups[{i}]");
            if groups.insert(&g.name, group_from(g, &field)?).is_some() {
                return Err(schema(format!("{field}.name"), format!("duplicate group '{}'", g.name)));
            }
        }
        let point_ids = lookup(&self.points);
        if point_ids.len() != self.points.len() {
            return Err(schema("points", "duplicate point label"));
        }
        let point = |label: &str, field: String| {
            point_ids.get(label).copied().ok_or_else(|| schema(field, format!("unknown point '{label}'")))
        };
        let mut indices = Vec::with_capacity(self.indices.len());
        for (i, ix) in self.indices.iter().enumerate() {
            let field = format!("indices[{i}]");
            let group = groups
                .get(ix.group.as_str())
                .ok_or_else(|| schema(format!("{field}.group"), format!("unknown group '{}'", ix.group)))?
                .clone();
            let carrier = ix
                .points
                .iter()
                .enumerate()
                .map(|(k, p)| point(p, format!("{field}.points[{k}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let local = lookup(&ix.points);
            if local.len() != ix.points.len() {
                return Err(schema(format!("{field}.points"), "duplicate point"));
            }
            let mut table = Vec::with_capacity(ix.action.len());
            for (g, row) in ix.action.iter().enumerate() {
                let r = row
                    .iter()
                    .enumerate()
                    .map(|(k, p)| {
                        local.get(p.as_str()).copied().ok_or_else(|| {
                            schema(format!("{field}.action[{g}][{k}]"), format!("'{p}' is not in this local set"))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                table.push(r);
            }
            let action = GroupAction::new(group, carrier, table)
                .map_err(|e| schema(format!("{field}.action"), e.to_string()))?;
            indices.push(LocalAction::new(ix.name.clone(), action));
        }
        let index_ids: HashMap<&str, usize> =
            self.indices.iter().enumerate().map(|(i, ix)| (ix.name.as_str(), i)).collect();
        let index = |name: &str, field: String| {
            index_ids.get(name).copied().ok_or_else(|| schema(field, format!("unknown index '{name}'")))
        };
        let mut relation = BTreeSet::new();
        for (k, [a, b]) in self.relation.iter().enumerate() {
            relation.insert((index(a, format!("relation[{k}][0]"))?, index(b, format!("relation[{k}][1]"))?));
        }
        let mut homs = BTreeMap::new();
        for (k, h) in self.homs.iter().enumerate() {
            let field = format!("homs[{k}]");
            let a = index(&h.source, format!("{field}.source"))?;
            let b = index(&h.target, format!("{field}.target"))?;
            let target = indices[b].group();
            let ids = lookup(target.labels());
            let map = h
                .map
                .iter()
                .enumerate()
                .map(|(e, l)| {
                    ids.get(l.as_str())
                        .copied()
                        .ok_or_else(|| schema(format!("{field}.map[{e}]"), format!("unknown element '{l}'")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if homs.insert((a, b), map).is_some() {
                return Err(schema(field, "duplicate structure map"));
            }
        }
        for &(a, b) in &relation {
            if a == b && !homs.contains_key(&(a, a)) {
                homs.insert((a, a), indices[a].group().elements().collect());
            }
        }
        GlobalAction::new(self.points.clone(), indices, relation, homs).map_err(|e| schema("document", e.to_string()))
    }

    /// Canonical document: groups in first-use order, identity self-maps
    /// omitted.
    pub fn from_action(a: &GlobalAction) -> Self {
        let mut groups: Vec<GroupDocument> = Vec::new();
        let mut index_group = Vec::with_capacity(a.index_count());
        for ix in a.indices() {
            let g = ix.group();
            let doc = GroupDocument {
                name: g.name().to_string(),
                elements: g.labels().to_vec(),
                table: g.table().iter().map(|row| row.iter().map(|&e| g.label(e).to_string()).collect()).collect(),
                identity: g.label(g.identity()).to_string(),
            };
            let name = match groups.iter().find(|d| d.elements == doc.elements && d.table == doc.table && d.identity == doc.identity && (d.name == doc.name || d.name.starts_with(&format!("{}#", doc.name)))) {
                Some(existing) => existing.name.clone(),
                None => {
                    let mut name = doc.name.clone();
                    let mut k = 1;
                    while groups.iter().any(|d| d.name == name) {
                        k += 1;
                        name = format!("{}#{k}", doc.name);
                    }
                    groups.push(GroupDocument { name: name.clone(), ..doc });
                    name
                }
            };
            index_group.push(name);
        }
        let indices = a
            .indices()
            .iter()
            .zip(index_group)
            .map(|(ix, group)| IndexDocument {
                name: ix.name.clone(),
                points: ix.carrier().iter().map(|&p| a.label(p).to_string()).collect(),
                group,
                action: ix
                    .action
                    .table()
                    .iter()
                    .map(|row| row.iter().map(|&pos| a.label(ix.carrier()[pos]).to_string()).collect())
                    .collect(),
            })
            .collect();
        let name = |i: usize| a.index(i).name.clone();
        let relation = a.relation().iter().map(|&(x, y)| [name(x), name(y)]).collect();
        let homs = a
            .homs()
            .iter()
            .filter(|(&(x, y), map)| x != y || map.iter().enumerate().any(|(i, &v)| i != v))
            .map(|(&(x, y), map)| {
                let target = a.index(y).group();
                HomDocument {
                    source: name(x),
                    target: name(y),
                    map: map.iter().map(|&e| target.label(e).to_string()).collect(),
                }
            })
            .collect();
        ActionDocument {
            format: ACTION_FORMAT.into(),
            groups,
            points: a.points().to_vec(),
            indices,
            relation,
            homs,
        }
    }
}

pub fn parse_action(json: &str) -> Result<GlobalAction, IoError> {
    serde_json::from_str::<ActionDocument>(json)?.to_action()
}

pub fn emit_action(a: &GlobalAction) -> String {
    serde_json::to_string_pretty(&ActionDocument::from_action(a)).expect("serializable")
}

fn points_from(a: &GlobalAction, labels: &[String], field: &str) -> Result<Vec<usize>, IoError> {
    labels
        .iter()
        .enumerate()
        .map(|(i, l)| a.point_id(l).ok_or_else(|| schema(format!("{field}[{i}]"), format!("unknown point '{l}'"))))
        .collect()
}

fn labels_of(a: &GlobalAction, points: &[usize]) -> Vec<String> {
    points.iter().map(|&p| a.label(p).to_string()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathDocument {
    #[serde(default)]
    pub offset: i64,
    pub points: Vec<String>,
}

impl PathDocument {
    pub fn to_path(&self, a: &GlobalAction) -> Result<Path, IoError> {
        let points = points_from(a, &self.points, "points")?;
        Path::new(self.offset, points).map_err(|e| schema("points", e.to_string()))
    }

    pub fn from_path(a: &GlobalAction, p: &Path) -> Self {
        Self { offset: p.offset(), points: labels_of(a, p.points()) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridDocument {
    pub mode: String,
    pub rows: Vec<PathDocument>,
}

impl GridDocument {
    pub fn to_grid(&self, a: &GlobalAction) -> Result<GridHomotopy, IoError> {
        let mode: HomotopyMode = self.mode.parse().map_err(|e: String| schema("mode", e))?;
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.to_path(a).map_err(|e| prefix(e, &format!("rows[{i}]"))))
            .collect::<Result<Vec<_>, _>>()?;
        GridHomotopy::new(mode, rows).map_err(|e| schema("rows", e.to_string()))
    }

    pub fn from_grid(a: &GlobalAction, h: &GridHomotopy) -> Self {
        Self { mode: h.mode.name().into(), rows: h.rows().iter().map(|r| PathDocument::from_path(a, r)).collect() }
    }
}

fn prefix(e: IoError, at: &str) -> IoError {
    match e {
        IoError::Schema { field, message } => IoError::Schema { field: format!("{at}.{field}"), message },
        other => other,
    }
}

/// A map between two actions, each embedded in full.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDocument {
    pub format: String,
    pub source: ActionDocument,
    pub target: ActionDocument,
    /// Image label of each source point, in source point order.
    pub map: Vec<String>,
    /// Optional distinguished source point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
}

#[derive(Debug, Clone)]
pub struct LoadedMap {
    pub source: GlobalAction,
    pub target: GlobalAction,
    pub map: Vec<usize>,
    pub base: Option<usize>,
}

impl MorphismDocument {
    pub fn load(&self) -> Result<LoadedMap, IoError> {
        if self.format != MAP_FORMAT {
            return Err(schema("format", format!("expected '{MAP_FORMAT}', found '{}'", self.format)));
        }
        let source = self.source.to_action().map_err(|e| prefix(e, "source"))?;
        let target = self.target.to_action().map_err(|e| prefix(e, "target"))?;
        if self.map.len() != source.point_count() {
            return Err(schema("map", format!("{} entries for {} source points", self.map.len(), source.point_count())));
        }
        let map = points_from(&target, &self.map, "map")?;
        let base = match &self.base {
            Some(l) => Some(source.point_id(l).ok_or_else(|| schema("base", format!("unknown point '{l}'")))?),
            None => None,
        };
        Ok(LoadedMap { source, target, map, base })
    }

    pub fn new(source: &GlobalAction, target: &GlobalAction, map: &[usize], base: Option<usize>) -> Self {
        Self {
            format: MAP_FORMAT.into(),
            source: ActionDocument::from_action(source),
            target: ActionDocument::from_action(target),
            map: labels_of(target, map),
            base: base.map(|b| source.label(b).to_string()),
        }
    }
}

pub fn parse_map(json: &str) -> Result<LoadedMap, IoError> {
    serde_json::from_str::<MorphismDocument>(json)?.load()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupDocument {
    pub base: String,
    pub words: Vec<String>,
}

impl SubgroupDocument {
    pub fn words(&self, p: &Pi1Presentation) -> Result<Vec<Word>, IoError> {
        self.words
            .iter()
            .enumerate()
            .map(|(i, w)| p.parse_word(w).map_err(|e| schema(format!("words[{i}]"), e.to_string())))
            .collect()
    }
}

/// Graphviz rendering of the frame graph; triangles are listed as comments.
pub fn frame_graph_dot(a: &GlobalAction) -> String {
    let g = a.frame_graph();
    let mut out = String::from("graph frames {\n");
    for p in 0..a.point_count() {
        out.push_str(&format!("  {p} [label={}];\n", serde_json::to_string(a.label(p)).expect("string")));
    }
    for (u, v) in &g.edges {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    for [x, y, z] in &g.triangles {
        out.push_str(&format!("  // triangle {x} {y} {z}\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::fixtures::*;

    #[test]
    fn round_trips() {
        for (name, a) in all_fixtures() {
            let text = emit_action(&a);
            let back = parse_action(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(back, a, "{name}");
            assert_eq!(emit_action(&back), text, "{name}");
        }
    }

    #[test]
    fn schema_errors_name_the_field() {
        let mut doc = ActionDocument::from_action(&cyclic(4));
        doc.indices[2].group = "missing".into();
        match doc.to_action() {
            Err(IoError::Schema { field, .. }) => assert_eq!(field, "indices[2].group"),
            other => panic!("{other:?}"),
        }
        let mut doc = ActionDocument::from_action(&cyclic(4));
        doc.indices[0].action[1][0] = "3".into();
        assert!(matches!(doc.to_action(), Err(IoError::Schema { field, .. }) if field == "indices[0].action[1][0]"));
        assert!(matches!(parse_action("{"), Err(IoError::Json(_))));
    }

    #[test]
    fn paths_and_grids() {
        let t = ft();
        let p = Path::from_points(vec![0, 1, 2, 0]).unwrap();
        let doc = PathDocument::from_path(&t, &p);
        assert_eq!(doc.points, vec!["a", "b", "c", "a"]);
        assert_eq!(doc.to_path(&t).unwrap(), p);
        let h = GridHomotopy::new(HomotopyMode::EndPointStable, vec![p, Path::constant(0)]).unwrap();
        let g = GridDocument::from_grid(&t, &h);
        assert_eq!(g.to_grid(&t).unwrap(), h);
    }

    #[test]
    fn maps() {
        let doc = MorphismDocument::new(&cyclic(6), &cyclic(3), &[0, 1, 2, 0, 1, 2], Some(0));
        let text = serde_json::to_string(&doc).unwrap();
        let loaded = parse_map(&text).unwrap();
        assert_eq!(loaded.map, vec![0, 1, 2, 0, 1, 2]);
        assert_eq!(loaded.base, Some(0));
    }
}

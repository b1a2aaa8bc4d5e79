//! Scene loading: a JSON document naming the grid, images, functions,
//! measures, and transformations a run works with. Missing scenes fall back
//! to a built-in default carrying the standard objects.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;

use qmlab::{
    family, Cell, CellMap, CellSet, Connectivity, DistinguishedGeometry, Grid, GridFunction, Image,
    ImageTransformation, Kind, QuasiMeasure, StarSample,
};

#[derive(Debug)]
pub struct SceneError(pub String);

impl std::fmt::Display for SceneError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "scene error: {}", self.0)
    }
}

impl std::error::Error for SceneError {}

fn err<T>(msg: impl Into<String>) -> Result<T, SceneError> {
    Err(SceneError(msg.into()))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneSpec {
    pub grid: GridSpec,
    #[serde(default)]
    pub images: BTreeMap<String, ImageSpec>,
    #[serde(default)]
    pub functions: BTreeMap<String, FunctionSpec>,
    #[serde(default)]
    pub measures: BTreeMap<String, MeasureSpec>,
    #[serde(default)]
    pub transforms: BTreeMap<String, TransformSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub n: u16,
    #[serde(default = "default_adjacency")]
    pub adjacency: String,
    #[serde(default)]
    pub marked_points: Vec<(f64, f64)>,
}

fn default_adjacency() -> String {
    "8/4".into()
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ImageSpec {
    #[serde(default)]
    pub template: Option<String>,
    #[serde(default)]
    pub kind: Option<String>,
    #[serde(default)]
    pub mask: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    #[serde(default)]
    pub builtin: Option<String>,
    #[serde(default)]
    pub csv: Option<String>,
    #[serde(default)]
    pub sum: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureSpec {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default)]
    pub at: Option<serde_json::Value>,
    #[serde(default)]
    pub weights: Option<Vec<f64>>,
    #[serde(default)]
    pub parts: Option<Vec<String>>,
    #[serde(default)]
    pub inner: Option<String>,
    #[serde(default)]
    pub map: Option<MapSpec>,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    #[serde(default)]
    pub builtin: Option<String>,
    #[serde(default)]
    pub csv: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformSpec {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default)]
    pub map: Option<MapSpec>,
    #[serde(default)]
    pub measure: Option<String>,
    #[serde(default)]
    pub target: Option<u16>,
    #[serde(default)]
    pub sample: Option<Vec<String>>,
    #[serde(default)]
    pub first: Option<String>,
    #[serde(default)]
    pub second: Option<String>,
}

/// A fully resolved scene.
pub struct Scene {
    pub grid: Arc<Grid>,
    pub geometry: Arc<DistinguishedGeometry>,
    pub images: BTreeMap<String, Image>,
    pub functions: BTreeMap<String, GridFunction>,
    pub measures: BTreeMap<String, QuasiMeasure>,
    pub transforms: BTreeMap<String, ImageTransformation>,
    pub star_samples: BTreeMap<String, Arc<StarSample>>,
}

impl Scene {
    pub fn image(&self, name: &str) -> Result<&Image, SceneError> {
        self.images
            .get(name)
            .ok_or_else(|| SceneError(format!("unknown image `{name}`")))
    }

    pub fn measure(&self, name: &str) -> Result<&QuasiMeasure, SceneError> {
        self.measures
            .get(name)
            .ok_or_else(|| SceneError(format!("unknown measure `{name}`")))
    }

    /// Named functions resolve from the scene; otherwise the name is tried
    /// as a builtin generator (`pyramid`, `plane_b`, `constant:<c>`,
    /// `coords:x`, `coords:y`).
    pub fn function(&self, name: &str) -> Result<GridFunction, SceneError> {
        if let Some(f) = self.functions.get(name) {
            return Ok(f.clone());
        }
        builtin_function(&self.grid, name)
            .map_err(|_| SceneError(format!("unknown function `{name}`")))
    }

    pub fn transform(&self, name: &str) -> Result<&ImageTransformation, SceneError> {
        self.transforms
            .get(name)
            .ok_or_else(|| SceneError(format!("unknown transformation `{name}`")))
    }
}

fn builtin_function(grid: &Arc<Grid>, name: &str) -> qmlab::Result<GridFunction> {
    if let Some(c) = name.strip_prefix("constant:") {
        let c: f64 = c
            .parse()
            .map_err(|e| qmlab::Error::Parse(format!("bad constant `{c}`: {e}")))?;
        return GridFunction::constant(grid.clone(), c);
    }
    match name {
        "pyramid" => GridFunction::pyramid(grid.clone()),
        "plane_b" => GridFunction::plane_b(grid.clone()),
        "coords:x" => GridFunction::coords_x(grid.clone()),
        "coords:y" => GridFunction::coords_y(grid.clone()),
        other => Err(qmlab::Error::Parse(format!("unknown builtin `{other}`"))),
    }
}

fn parse_kind(s: Option<&str>, default: Kind) -> Result<Kind, SceneError> {
    match s {
        None => Ok(default),
        Some(s) => Kind::parse(s).map_err(|e| SceneError(e.to_string())),
    }
}

fn template_image(
    grid: &Arc<Grid>,
    geometry: &DistinguishedGeometry,
    template: &str,
    kind: Option<&str>,
) -> Result<Image, SceneError> {
    let parts: Vec<&str> = template.split(':').collect();
    let marked = |idx: &str| -> Result<Cell, SceneError> {
        let i: usize = idx
            .parse()
            .map_err(|_| SceneError(format!("bad marked index `{idx}`")))?;
        geometry
            .marked
            .get(i)
            .copied()
            .ok_or_else(|| SceneError(format!("marked point {i} does not exist")))
    };
    let (cells, default_kind) = match parts.as_slice() {
        ["empty"] => (CellSet::empty(grid), Kind::Closed),
        ["full"] => (CellSet::full(grid), Kind::Closed),
        ["border_ring"] => (family::border_ring(grid), Kind::Closed),
        ["inner_square"] => (family::inner_square(grid), Kind::Open),
        ["center_cell"] => (family::blot(grid, geometry.center, 0), Kind::Closed),
        ["half_ring", side] => {
            let side = match *side {
                "left" => family::Side::Left,
                "right" => family::Side::Right,
                other => return err(format!("bad half_ring side `{other}`")),
            };
            (family::half_ring(grid, side), Kind::Closed)
        }
        ["thick_ring", w] => {
            let w: u16 = w.parse().map_err(|_| SceneError("bad ring width".into()))?;
            (family::thick_ring(grid, w), Kind::Open)
        }
        ["strip", orient, hw] => {
            let hw: u16 = hw
                .parse()
                .map_err(|_| SceneError("bad strip width".into()))?;
            let cells = match *orient {
                "v" => family::vertical_strip(grid, hw),
                "h" => family::horizontal_strip(grid, hw),
                other => return err(format!("bad strip orientation `{other}`")),
            };
            (cells, Kind::Closed)
        }
        ["disk", x, y, r] => {
            let parse = |v: &str| -> Result<f64, SceneError> {
                v.parse()
                    .map_err(|_| SceneError(format!("bad disk number `{v}`")))
            };
            let center = grid
                .snap_point(parse(x)?, parse(y)?)
                .map_err(|e| SceneError(e.to_string()))?;
            let radius = parse(r)? * grid.n() as f64;
            (family::disk(grid, center, radius), Kind::Closed)
        }
        ["lens", i, j, pad] => {
            let pad: u16 = pad.parse().map_err(|_| SceneError("bad lens pad".into()))?;
            (
                family::lens(grid, marked(i)?, marked(j)?, pad),
                Kind::Closed,
            )
        }
        ["blot", i, pad] => {
            let pad: u16 = pad.parse().map_err(|_| SceneError("bad blot pad".into()))?;
            (family::blot(grid, marked(i)?, pad), Kind::Closed)
        }
        ["blob", seed, size] => {
            let seed: u64 = seed
                .parse()
                .map_err(|_| SceneError("bad blob seed".into()))?;
            let size: usize = size
                .parse()
                .map_err(|_| SceneError("bad blob size".into()))?;
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
            (
                family::random_solid_blob(grid, &mut rng, size),
                Kind::Closed,
            )
        }
        _ => return err(format!("unknown template `{template}`")),
    };
    Ok(Image::new(cells, parse_kind(kind, default_kind)?))
}

pub fn resolve(spec: &SceneSpec, base_dir: Option<&Path>) -> Result<Scene, SceneError> {
    let region = match spec.grid.adjacency.as_str() {
        "8/4" => Connectivity::Eight,
        "4/8" => Connectivity::Four,
        other => return err(format!("bad adjacency `{other}` (want 8/4 or 4/8)")),
    };
    let grid = Grid::square(spec.grid.n, region, qmlab::Rect::unit_square())
        .map_err(|e| SceneError(e.to_string()))?;
    let geometry = Arc::new(
        DistinguishedGeometry::for_grid(&grid, &spec.grid.marked_points)
            .map_err(|e| SceneError(e.to_string()))?,
    );

    let read_file = |rel: &str| -> Result<String, SceneError> {
        let path: PathBuf = match base_dir {
            Some(dir) => dir.join(rel),
            None => PathBuf::from(rel),
        };
        std::fs::read_to_string(&path)
            .map_err(|e| SceneError(format!("cannot read {}: {e}", path.display())))
    };

    let mut images = BTreeMap::new();
    for (name, ispec) in &spec.images {
        let image = match (&ispec.template, &ispec.mask) {
            (Some(t), None) => template_image(&grid, &geometry, t, ispec.kind.as_deref())?,
            (None, Some(lines)) => {
                let kind = parse_kind(ispec.kind.as_deref(), Kind::Closed)?;
                let refs: Vec<&str> = lines.iter().map(String::as_str).collect();
                Image::new(
                    CellSet::from_mask_lines(&grid, &refs)
                        .map_err(|e| SceneError(format!("image `{name}`: {e}")))?,
                    kind,
                )
            }
            _ => return err(format!("image `{name}` needs exactly one of template/mask")),
        };
        images.insert(name.clone(), image);
    }

    let mut functions: BTreeMap<String, GridFunction> = BTreeMap::new();
    // two passes so `sum` can reference other named functions
    for (name, fspec) in &spec.functions {
        let f = match (&fspec.builtin, &fspec.csv, &fspec.sum) {
            (Some(b), None, None) => builtin_function(&grid, b)
                .map_err(|e| SceneError(format!("function `{name}`: {e}")))?,
            (None, Some(path), None) => {
                GridFunction::from_csv(grid.clone(), name.clone(), &read_file(path)?)
                    .map_err(|e| SceneError(format!("function `{name}`: {e}")))?
            }
            (None, None, Some(_)) => continue,
            _ => {
                return err(format!(
                    "function `{name}` needs exactly one of builtin/csv/sum"
                ))
            }
        };
        functions.insert(name.clone(), f.with_name(name.clone()));
    }
    for (name, fspec) in &spec.functions {
        if let Some(parts) = &fspec.sum {
            let mut acc: Option<GridFunction> = None;
            for part in parts {
                let f = functions.get(part).cloned().ok_or_else(|| {
                    SceneError(format!("function `{name}`: unknown part `{part}`"))
                })?;
                acc = Some(match acc {
                    None => f,
                    Some(a) => a
                        .add(&f)
                        .map_err(|e| SceneError(format!("function `{name}`: {e}")))?,
                });
            }
            let f = acc.ok_or_else(|| SceneError(format!("function `{name}`: empty sum")))?;
            functions.insert(name.clone(), f.with_name(name.clone()));
        }
    }

    let resolve_map = |mspec: &MapSpec| -> Result<Arc<CellMap>, SceneError> {
        match (&mspec.builtin, &mspec.csv) {
            (Some(b), None) => {
                let parts: Vec<&str> = b.split(':').collect();
                let map = match parts.as_slice() {
                    ["identity"] => CellMap::identity(grid.clone()),
                    ["shift", dr, dc] => {
                        let dr: i32 = dr.parse().map_err(|_| SceneError("bad shift".into()))?;
                        let dc: i32 = dc.parse().map_err(|_| SceneError("bad shift".into()))?;
                        CellMap::shift(grid.clone(), dr, dc)
                    }
                    ["fold"] => CellMap::fold(grid.clone()),
                    _ => return err(format!("unknown map builtin `{b}`")),
                };
                Ok(Arc::new(map))
            }
            (None, Some(path)) => Ok(Arc::new(
                CellMap::from_csv(grid.clone(), grid.clone(), &read_file(path)?)
                    .map_err(|e| SceneError(e.to_string()))?,
            )),
            _ => err("map needs exactly one of builtin/csv"),
        }
    };

    // measures resolve recursively: mixtures and pushforwards may reference
    // other named measures
    let mut measures: BTreeMap<String, QuasiMeasure> = BTreeMap::new();
    fn resolve_measure(
        name: &str,
        spec: &SceneSpec,
        grid: &Arc<Grid>,
        geometry: &Arc<DistinguishedGeometry>,
        resolve_map: &dyn Fn(&MapSpec) -> Result<Arc<CellMap>, SceneError>,
        done: &mut BTreeMap<String, QuasiMeasure>,
        visiting: &mut Vec<String>,
    ) -> Result<QuasiMeasure, SceneError> {
        if let Some(m) = done.get(name) {
            return Ok(m.clone());
        }
        if visiting.iter().any(|v| v == name) {
            return err(format!("measure cycle through `{name}`"));
        }
        let mspec = spec
            .measures
            .get(name)
            .ok_or_else(|| SceneError(format!("unknown measure `{name}`")))?;
        visiting.push(name.to_string());
        let lift = |e: qmlab::Error| SceneError(format!("measure `{name}`: {e}"));
        let m = match mspec.kind.as_str() {
            "aarnes" => QuasiMeasure::aarnes(grid.clone(), geometry.clone()).map_err(lift)?,
            "three_point" => {
                QuasiMeasure::three_point(grid.clone(), geometry.clone()).map_err(lift)?
            }
            "dirac" => {
                let cell = match &mspec.at {
                    Some(serde_json::Value::String(s)) if s == "center" => geometry.center,
                    Some(serde_json::Value::String(s)) => {
                        let idx: usize = s
                            .strip_prefix("marked:")
                            .and_then(|v| v.parse().ok())
                            .ok_or_else(|| {
                                SceneError(format!("measure `{name}`: bad `at` string `{s}`"))
                            })?;
                        *geometry.marked.get(idx).ok_or_else(|| {
                            SceneError(format!("measure `{name}`: marked point {idx} missing"))
                        })?
                    }
                    Some(serde_json::Value::Array(xy)) if xy.len() == 2 => {
                        let x = xy[0].as_f64();
                        let y = xy[1].as_f64();
                        match (x, y) {
                            (Some(x), Some(y)) => grid.snap_point(x, y).map_err(lift)?,
                            _ => return err(format!("measure `{name}`: bad `at` point")),
                        }
                    }
                    _ => return err(format!("measure `{name}` needs `at`")),
                };
                QuasiMeasure::dirac(grid.clone(), cell).map_err(lift)?
            }
            "mixture" => {
                let weights = mspec
                    .weights
                    .as_ref()
                    .ok_or_else(|| SceneError(format!("measure `{name}` needs weights")))?;
                let parts = mspec
                    .parts
                    .as_ref()
                    .ok_or_else(|| SceneError(format!("measure `{name}` needs parts")))?;
                let resolved = parts
                    .iter()
                    .map(|p| resolve_measure(p, spec, grid, geometry, resolve_map, done, visiting))
                    .collect::<Result<Vec<_>, _>>()?;
                QuasiMeasure::mixture(weights, resolved).map_err(lift)?
            }
            "pushforward" => {
                let inner = mspec
                    .inner
                    .as_ref()
                    .ok_or_else(|| SceneError(format!("measure `{name}` needs inner")))?;
                let map = mspec
                    .map
                    .as_ref()
                    .ok_or_else(|| SceneError(format!("measure `{name}` needs map")))?;
                let inner =
                    resolve_measure(inner, spec, grid, geometry, resolve_map, done, visiting)?;
                QuasiMeasure::pushforward(inner, resolve_map(map)?).map_err(lift)?
            }
            other => return err(format!("unknown measure type `{other}`")),
        };
        visiting.pop();
        let m = m.with_label(name.to_string());
        done.insert(name.to_string(), m.clone());
        Ok(m)
    }
    for name in spec.measures.keys() {
        let mut visiting = Vec::new();
        resolve_measure(
            name,
            spec,
            &grid,
            &geometry,
            &resolve_map,
            &mut measures,
            &mut visiting,
        )?;
    }

    let mut transforms: BTreeMap<String, ImageTransformation> = BTreeMap::new();
    let mut star_samples: BTreeMap<String, Arc<StarSample>> = BTreeMap::new();
    // composites may reference other transforms: resolve simple ones first
    let mut pending: Vec<(&String, &TransformSpec)> = Vec::new();
    for (name, tspec) in &spec.transforms {
        let lift = |e: qmlab::Error| SceneError(format!("transform `{name}`: {e}"));
        let t = match tspec.kind.as_str() {
            "preimage" => {
                let map = tspec
                    .map
                    .as_ref()
                    .ok_or_else(|| SceneError(format!("transform `{name}` needs map")))?;
                ImageTransformation::preimage(resolve_map(map)?)
            }
            "from_simple" => {
                let mname = tspec
                    .measure
                    .as_ref()
                    .ok_or_else(|| SceneError(format!("transform `{name}` needs measure")))?;
                let sigma = measures
                    .get(mname)
                    .cloned()
                    .ok_or_else(|| SceneError(format!("unknown measure `{mname}`")))?;
                let k = tspec.target.unwrap_or(2);
                let target = Grid::discrete(k).map_err(lift)?;
                ImageTransformation::from_simple(sigma, target)
            }
            "star_restricted" => {
                let names = tspec
                    .sample
                    .as_ref()
                    .ok_or_else(|| SceneError(format!("transform `{name}` needs sample")))?;
                let members = names
                    .iter()
                    .map(|m| {
                        measures
                            .get(m)
                            .cloned()
                            .map(|q| (m.clone(), q))
                            .ok_or_else(|| SceneError(format!("unknown measure `{m}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let sample = Arc::new(StarSample::new(members).map_err(lift)?);
                star_samples.insert(name.clone(), sample.clone());
                ImageTransformation::star_restricted(sample).map_err(lift)?
            }
            "constant_empty" => ImageTransformation::constant_empty(grid.clone(), grid.clone()),
            "composite" => {
                pending.push((name, tspec));
                continue;
            }
            other => return err(format!("unknown transform type `{other}`")),
        };
        transforms.insert(name.clone(), t.with_label(name.clone()));
    }
    for (name, tspec) in pending {
        let first = tspec
            .first
            .as_ref()
            .and_then(|f| transforms.get(f))
            .ok_or_else(|| SceneError(format!("transform `{name}`: unknown `first`")))?;
        let second = tspec
            .second
            .as_ref()
            .and_then(|s| transforms.get(s))
            .ok_or_else(|| SceneError(format!("transform `{name}`: unknown `second`")))?;
        let t = qmlab::compose(second, first)
            .map_err(|e| SceneError(format!("transform `{name}`: {e}")))?;
        transforms.insert(name.clone(), t.with_label(name.clone()));
    }

    Ok(Scene {
        grid,
        geometry,
        images,
        functions,
        measures,
        transforms,
        star_samples,
    })
}

/// The built-in scene: standard images, the two example functions and their
/// sum, the shipped measures, and the four reference transformations.
pub fn default_spec(n: u16) -> SceneSpec {
    let image = |template: &str| ImageSpec {
        template: Some(template.into()),
        kind: None,
        mask: None,
    };
    let image_kind = |template: &str, kind: &str| ImageSpec {
        template: Some(template.into()),
        kind: Some(kind.into()),
        mask: None,
    };
    let builtin = |b: &str| FunctionSpec {
        builtin: Some(b.into()),
        csv: None,
        sum: None,
    };
    let mut images = BTreeMap::new();
    images.insert("empty".into(), image("empty"));
    images.insert("full".into(), image("full"));
    images.insert("full_open".into(), image_kind("full", "open"));
    images.insert("border_ring".into(), image("border_ring"));
    images.insert("inner_square".into(), image("inner_square"));
    images.insert("half_ring_left".into(), image("half_ring:left"));
    images.insert("half_ring_right".into(), image("half_ring:right"));
    images.insert("thick_ring".into(), image("thick_ring:2"));
    images.insert("center_cell".into(), image("center_cell"));
    images.insert("strip_center".into(), image("strip:v:1"));
    images.insert("off_center_disk".into(), image("disk:0.25:0.25:0.1"));
    images.insert("lens_pq".into(), image("lens:0:1:2"));
    images.insert("disk_p".into(), image("blot:0:2"));
    images.insert("blob_1".into(), image("blob:11:60"));
    images.insert("blob_2".into(), image_kind("blob:12:60", "open"));

    let mut functions = BTreeMap::new();
    functions.insert("pyramid".into(), builtin("pyramid"));
    functions.insert("plane_b".into(), builtin("plane_b"));
    functions.insert(
        "pyramid_plus_plane".into(),
        FunctionSpec {
            builtin: None,
            csv: None,
            sum: Some(vec!["pyramid".into(), "plane_b".into()]),
        },
    );

    let measure = |kind: &str| MeasureSpec {
        kind: kind.into(),
        at: None,
        weights: None,
        parts: None,
        inner: None,
        map: None,
    };
    let mut measures = BTreeMap::new();
    measures.insert("aarnes".into(), measure("aarnes"));
    measures.insert("three_point".into(), measure("three_point"));
    measures.insert(
        "dirac:center".into(),
        MeasureSpec {
            at: Some(serde_json::Value::String("center".into())),
            ..measure("dirac")
        },
    );
    measures.insert(
        "dirac:p".into(),
        MeasureSpec {
            at: Some(serde_json::Value::String("marked:0".into())),
            ..measure("dirac")
        },
    );
    measures.insert(
        "dirac:q".into(),
        MeasureSpec {
            at: Some(serde_json::Value::String("marked:1".into())),
            ..measure("dirac")
        },
    );
    measures.insert(
        "mix_pq".into(),
        MeasureSpec {
            weights: Some(vec![0.5, 0.5]),
            parts: Some(vec!["dirac:p".into(), "dirac:q".into()]),
            ..measure("mixture")
        },
    );
    measures.insert(
        "aarnes_fold".into(),
        MeasureSpec {
            inner: Some("aarnes".into()),
            map: Some(MapSpec {
                builtin: Some("fold".into()),
                csv: None,
            }),
            ..measure("pushforward")
        },
    );

    let mut transforms = BTreeMap::new();
    let transform = |kind: &str| TransformSpec {
        kind: kind.into(),
        map: None,
        measure: None,
        target: None,
        sample: None,
        first: None,
        second: None,
    };
    transforms.insert(
        "identity".into(),
        TransformSpec {
            map: Some(MapSpec {
                builtin: Some("identity".into()),
                csv: None,
            }),
            ..transform("preimage")
        },
    );
    transforms.insert(
        "shift".into(),
        TransformSpec {
            map: Some(MapSpec {
                builtin: Some("shift:0:1".into()),
                csv: None,
            }),
            ..transform("preimage")
        },
    );
    transforms.insert(
        "fold".into(),
        TransformSpec {
            map: Some(MapSpec {
                builtin: Some("fold".into()),
                csv: None,
            }),
            ..transform("preimage")
        },
    );
    transforms.insert(
        "from_aarnes".into(),
        TransformSpec {
            measure: Some("aarnes".into()),
            target: Some(2),
            ..transform("from_simple")
        },
    );
    transforms.insert(
        "star4".into(),
        TransformSpec {
            sample: Some(vec![
                "aarnes".into(),
                "three_point".into(),
                "dirac:center".into(),
                "dirac:p".into(),
            ]),
            ..transform("star_restricted")
        },
    );
    transforms.insert(
        "fold_then_shift".into(),
        TransformSpec {
            first: Some("fold".into()),
            second: Some("shift".into()),
            ..transform("composite")
        },
    );

    SceneSpec {
        grid: GridSpec {
            n,
            adjacency: default_adjacency(),
            marked_points: vec![(0.25, 0.25), (0.75, 0.25), (0.5, 0.75)],
        },
        images,
        functions,
        measures,
        transforms,
    }
}

pub fn load(
    path: Option<&Path>,
    n_override: Option<u16>,
    default_n: u16,
) -> Result<Scene, SceneError> {
    let (mut spec, base_dir) = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| SceneError(format!("cannot read {}: {e}", p.display())))?;
            let spec: SceneSpec = serde_json::from_str(&text)
                .map_err(|e| SceneError(format!("bad scene JSON: {e}")))?;
            (spec, p.parent().map(Path::to_path_buf))
        }
        None => (default_spec(default_n), None),
    };
    if let Some(n) = n_override {
        spec.grid.n = n;
    }
    resolve(&spec, base_dir.as_deref())
}

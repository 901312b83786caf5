//! JSON instance files shared by the library and the command-line tool.
//!
//! Every number is an exact rational string such as `"-3"` or `"7/2"`;
//! points of P^1 may also be `"inf"`.

use serde::{Deserialize, Serialize};

use crate::corrugated::PolygonM;
use crate::error::{GeomError, Result};
use crate::lower1d::PairState1D;
use crate::mirror::MirrorPair;
use crate::pentagram2d::LabeledPolygon2;
use crate::proj::ProjPoint;
use crate::rational::{format_rational, parse_rational};

pub const FORMAT_TAG: &str = "pentagram-lab/v1";

/// A parsed instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Polygon2(LabeledPolygon2),
    PolygonM(PolygonM),
    Pair1(PairState1D),
    Mirror(MirrorPair),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "space")]
enum Payload {
    #[serde(rename = "P2")]
    P2 { labels: String, vertices: Vec<Vec<String>> },
    #[serde(rename = "Pm")]
    Pm {
        m: usize,
        label_offset: i64,
        vertices: Vec<Vec<String>>,
    },
    #[serde(rename = "P1")]
    P1 {
        #[serde(rename = "X")]
        x: Vec<String>,
        #[serde(rename = "Y")]
        y: Vec<String>,
    },
    #[serde(rename = "P2-mirror")]
    Mirror {
        #[serde(rename = "P")]
        p: Vec<Vec<String>>,
    },
}

#[derive(Debug, Serialize, Deserialize)]
struct File {
    format: String,
    #[serde(flatten)]
    payload: Payload,
}

fn affine_strings(p: &ProjPoint) -> Result<Vec<String>> {
    Ok(p.try_affine()?.iter().map(format_rational).collect())
}

fn parse_affine(coords: &[String], dim: usize) -> Result<ProjPoint> {
    if coords.len() != dim {
        return Err(GeomError::Parse(format!("expected {dim} coordinates, got {}", coords.len())));
    }
    let v = coords.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
    Ok(ProjPoint::affine(&v))
}

fn p1_string(p: &ProjPoint) -> String {
    p.value().map_or_else(|| "inf".to_string(), |v| format_rational(&v))
}

fn parse_p1(s: &str) -> Result<ProjPoint> {
    if s.trim() == "inf" {
        Ok(ProjPoint::infinity())
    } else {
        Ok(ProjPoint::finite1(parse_rational(s)?))
    }
}

fn labels_string(offset: i64) -> String {
    match offset {
        1 => "odd".into(),
        0 => "even".into(),
        k => k.to_string(),
    }
}

fn parse_labels(s: &str) -> Result<i64> {
    match s {
        "odd" => Ok(1),
        "even" => Ok(0),
        k => k.parse().map_err(|_| GeomError::Parse(format!("bad labels field {k:?}"))),
    }
}

impl Instance {
    pub fn space(&self) -> &'static str {
        match self {
            Instance::Polygon2(_) => "P2",
            Instance::PolygonM(_) => "Pm",
            Instance::Pair1(_) => "P1",
            Instance::Mirror(_) => "P2-mirror",
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let payload = match self {
            Instance::Polygon2(p) => Payload::P2 {
                labels: labels_string(p.label_offset()),
                vertices: p.vertices().iter().map(affine_strings).collect::<Result<_>>()?,
            },
            Instance::PolygonM(p) => Payload::Pm {
                m: p.m(),
                label_offset: p.label_offset(),
                vertices: p.vertices().iter().map(affine_strings).collect::<Result<_>>()?,
            },
            Instance::Pair1(s) => Payload::P1 {
                x: s.x().iter().map(p1_string).collect(),
                y: s.y().iter().map(p1_string).collect(),
            },
            Instance::Mirror(s) => Payload::Mirror {
                p: s.points().iter().map(affine_strings).collect::<Result<_>>()?,
            },
        };
        let file = File {
            format: FORMAT_TAG.to_string(),
            payload,
        };
        let mut text = serde_json::to_string_pretty(&file).map_err(|e| GeomError::Parse(e.to_string()))?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: File = serde_json::from_str(text).map_err(|e| GeomError::Parse(e.to_string()))?;
        if file.format != FORMAT_TAG {
            return Err(GeomError::Parse(format!("unknown format {:?}", file.format)));
        }
        match file.payload {
            Payload::P2 { labels, vertices } => {
                let pts = vertices.iter().map(|v| parse_affine(v, 2)).collect::<Result<Vec<_>>>()?;
                Ok(Instance::Polygon2(LabeledPolygon2::new(pts, parse_labels(&labels)?)?))
            }
            Payload::Pm { m, label_offset, vertices } => {
                let pts = vertices.iter().map(|v| parse_affine(v, m)).collect::<Result<Vec<_>>>()?;
                Ok(Instance::PolygonM(PolygonM::new(m, pts, label_offset)?))
            }
            Payload::P1 { x, y } => {
                let x = x.iter().map(|s| parse_p1(s)).collect::<Result<Vec<_>>>()?;
                let y = y.iter().map(|s| parse_p1(s)).collect::<Result<Vec<_>>>()?;
                Ok(Instance::Pair1(PairState1D::new(x, y)?))
            }
            Payload::Mirror { p } => {
                let pts = p.iter().map(|v| parse_affine(v, 2)).collect::<Result<Vec<_>>>()?;
                Ok(Instance::Mirror(MirrorPair::new(pts)?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lower1d::{AxisAlignedPair1, PairState1D};
    use crate::mirror::random_mirror_pair;
    use crate::rational::rat;

    fn round_trip(i: &Instance) {
        let text = i.to_json().unwrap();
        assert_eq!(&Instance::from_json(&text).unwrap(), i);
        assert_eq!(Instance::from_json(&text).unwrap().to_json().unwrap(), text);
    }

    #[test]
    fn polygon_file_shape() {
        let p = crate::pentagram2d::AxisAligned2::from_levels(vec![rat(0), rat(4), rat(1)], vec![rat(0), rat(2), rat(5)])
            .unwrap();
        let i = Instance::Polygon2(p.polygon().clone());
        let v: serde_json::Value = serde_json::from_str(&i.to_json().unwrap()).unwrap();
        assert_eq!(v["format"], "pentagram-lab/v1");
        assert_eq!(v["space"], "P2");
        assert_eq!(v["labels"], "odd");
        assert_eq!(v["vertices"][1], serde_json::json!(["4", "0"]));
        round_trip(&i);
    }

    #[test]
    fn pair_file_uses_inf() {
        let b = AxisAlignedPair1::new(vec![rat(1), rat(2), rat(6)]).unwrap();
        let i = Instance::Pair1(PairState1D::from_b(&b));
        let v: serde_json::Value = serde_json::from_str(&i.to_json().unwrap()).unwrap();
        assert_eq!(v["X"], serde_json::json!(["inf", "inf", "inf"]));
        assert_eq!(v["Y"], serde_json::json!(["1", "2", "6"]));
        round_trip(&i);
    }

    #[test]
    fn other_spaces_round_trip() {
        round_trip(&Instance::Mirror(random_mirror_pair(5, 3, 9).unwrap()));
        let p = crate::corrugated::random_axis_aligned_m(3, 3, 2, 9).unwrap();
        round_trip(&Instance::PolygonM(p.polygon().clone()));
    }

    #[test]
    fn malformed_files_are_parse_errors() {
        assert!(matches!(Instance::from_json("{}"), Err(GeomError::Parse(_))));
        let wrong = r#"{"format":"other","space":"P1","X":["1"],"Y":["2"]}"#;
        assert!(matches!(Instance::from_json(wrong), Err(GeomError::Parse(_))));
        let bad = r#"{"format":"pentagram-lab/v1","space":"P2-mirror","P":[["1","x"]]}"#;
        assert!(matches!(Instance::from_json(bad), Err(GeomError::Parse(_))));
    }
}

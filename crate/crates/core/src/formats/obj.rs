use std::fmt::Write as _;

use super::FormatError;

/// One face slot. Indices are 1-based, as in the file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Corner {
    pub vertex: usize,
    pub texcoord: Option<usize>,
    pub normal: Option<usize>,
}

impl Corner {
    pub const fn new(vertex: usize) -> Self {
        Self {
            vertex,
            texcoord: None,
            normal: None,
        }
    }

    pub const fn with(vertex: usize, texcoord: Option<usize>, normal: Option<usize>) -> Self {
        Self {
            vertex,
            texcoord,
            normal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face(pub Vec<Corner>);

impl Face {
    /// Face made of bare vertex indices.
    pub fn from_vertices(indices: &[usize]) -> Self {
        Face(indices.iter().map(|&v| Corner::new(v)).collect())
    }

    pub fn corners(&self) -> &[Corner] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }
}

/// Geometry, texture mapping and topology of a textured surface model.
///
/// Lines the parser does not interpret (comments, `mtllib`, `usemtl`, `o`,
/// `g`, `s`, ...) are kept verbatim in `passthrough` and written back ahead
/// of the geometry.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TexturedModel {
    pub vertices: Vec<[f64; 3]>,
    pub texcoords: Vec<[f64; 2]>,
    pub normals: Vec<[f64; 3]>,
    pub faces: Vec<Face>,
    pub passthrough: Vec<String>,
}

impl TexturedModel {
    pub fn corner_count(&self) -> usize {
        self.faces.iter().map(Face::arity).sum()
    }

    pub fn arities(&self) -> Vec<usize> {
        self.faces.iter().map(Face::arity).collect()
    }

    /// Checks face arity and that every index refers to an existing element.
    /// Errors carry the 1-based face number where a parse would give a line.
    pub fn validate(&self) -> Result<(), FormatError> {
        for (i, face) in self.faces.iter().enumerate() {
            let line = i + 1;
            if face.arity() < 3 {
                return Err(FormatError::DegenerateFace {
                    line,
                    corners: face.arity(),
                });
            }
            for c in face.corners() {
                check_index(line, "vertex", c.vertex, self.vertices.len())?;
                if let Some(t) = c.texcoord {
                    check_index(line, "texcoord", t, self.texcoords.len())?;
                }
                if let Some(n) = c.normal {
                    check_index(line, "normal", n, self.normals.len())?;
                }
            }
        }
        Ok(())
    }
}

fn check_index(
    line: usize,
    kind: &'static str,
    index: usize,
    count: usize,
) -> Result<(), FormatError> {
    if index == 0 || index > count {
        Err(FormatError::IndexOutOfRange {
            line,
            kind,
            index: index as i64,
            count,
        })
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy)]
struct RawIndex {
    value: i64,
    // element count when the face was read, for relative (negative) indices
    seen: usize,
}

struct RawCorner {
    vertex: RawIndex,
    texcoord: Option<RawIndex>,
    normal: Option<RawIndex>,
}

fn resolve(
    raw: RawIndex,
    line: usize,
    kind: &'static str,
    count: usize,
) -> Result<usize, FormatError> {
    let resolved = if raw.value < 0 {
        raw.seen as i64 + raw.value + 1
    } else {
        raw.value
    };
    if resolved < 1 || resolved as usize > count {
        return Err(FormatError::IndexOutOfRange {
            line,
            kind,
            index: raw.value,
            count,
        });
    }
    Ok(resolved as usize)
}

fn parse_real(token: &str, line: usize) -> Result<f64, FormatError> {
    match token.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(FormatError::BadNumber {
            line,
            token: token.to_string(),
        }),
    }
}

fn parse_reals<const N: usize>(
    fields: &[&str],
    line: usize,
    record: &str,
) -> Result<[f64; N], FormatError> {
    if fields.len() != N {
        return Err(FormatError::Malformed {
            line,
            message: format!("`{record}` needs {N} numbers, got {}", fields.len()),
        });
    }
    let mut out = [0.0; N];
    for (slot, tok) in out.iter_mut().zip(fields) {
        *slot = parse_real(tok, line)?;
    }
    Ok(out)
}

fn parse_index(token: &str, line: usize, seen: usize) -> Result<RawIndex, FormatError> {
    let value = token.parse::<i64>().map_err(|_| FormatError::BadNumber {
        line,
        token: token.to_string(),
    })?;
    Ok(RawIndex { value, seen })
}

fn parse_corner(token: &str, line: usize, counts: [usize; 3]) -> Result<RawCorner, FormatError> {
    let mut parts = token.split('/');
    let vertex = parse_index(parts.next().unwrap_or(""), line, counts[0])?;
    let texcoord = match parts.next() {
        None | Some("") => None,
        Some(t) => Some(parse_index(t, line, counts[1])?),
    };
    let normal = match parts.next() {
        None => None,
        Some(n) => Some(parse_index(n, line, counts[2])?),
    };
    if parts.next().is_some() {
        return Err(FormatError::Malformed {
            line,
            message: format!("face corner {token:?} has more than 3 fields"),
        });
    }
    Ok(RawCorner {
        vertex,
        texcoord,
        normal,
    })
}

/// Parses the supported OBJ subset: `v`, `vt`, `vn`, `f`.
///
/// Face indices may be absolute (1-based) or relative (negative); they are
/// range-checked once the whole file has been read.
pub fn parse_obj(text: &str) -> Result<TexturedModel, FormatError> {
    let mut model = TexturedModel::default();
    let mut raw_faces: Vec<(usize, Vec<RawCorner>)> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw_line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let keyword = fields.next().unwrap_or_default();
        let rest: Vec<&str> = fields.collect();
        match keyword {
            "v" => model.vertices.push(parse_reals::<3>(&rest, line, "v")?),
            "vn" => model.normals.push(parse_reals::<3>(&rest, line, "vn")?),
            "vt" => {
                // an optional third component is accepted only at its default of 0
                let uv = match rest.len() {
                    3 if parse_real(rest[2], line)? == 0.0 => &rest[..2],
                    3 => {
                        return Err(FormatError::Malformed {
                            line,
                            message: "3D texture coordinates are not supported".into(),
                        })
                    }
                    _ => &rest[..],
                };
                model.texcoords.push(parse_reals::<2>(uv, line, "vt")?);
            }
            "f" => {
                if rest.len() < 3 {
                    return Err(FormatError::DegenerateFace {
                        line,
                        corners: rest.len(),
                    });
                }
                let counts = [
                    model.vertices.len(),
                    model.texcoords.len(),
                    model.normals.len(),
                ];
                let corners = rest
                    .iter()
                    .map(|tok| parse_corner(tok, line, counts))
                    .collect::<Result<Vec<_>, _>>()?;
                raw_faces.push((line, corners));
            }
            _ => model
                .passthrough
                .push(raw_line.trim_end_matches('\r').to_string()),
        }
    }

    let (nv, nt, nn) = (
        model.vertices.len(),
        model.texcoords.len(),
        model.normals.len(),
    );
    model.faces = raw_faces
        .into_iter()
        .map(|(line, corners)| {
            corners
                .into_iter()
                .map(|c| {
                    Ok(Corner {
                        vertex: resolve(c.vertex, line, "vertex", nv)?,
                        texcoord: c
                            .texcoord
                            .map(|t| resolve(t, line, "texcoord", nt))
                            .transpose()?,
                        normal: c
                            .normal
                            .map(|n| resolve(n, line, "normal", nn))
                            .transpose()?,
                    })
                })
                .collect::<Result<Vec<_>, FormatError>>()
                .map(Face)
        })
        .collect::<Result<_, _>>()?;
    Ok(model)
}

/// Formats a real with 17 significant digits, enough to read back the
/// identical `f64`.
pub fn format_real(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() { "-0" } else { "0" }.to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.16e}");
    let exp: i32 = sci[sci.find('e').map_or(sci.len(), |i| i + 1)..]
        .parse()
        .unwrap_or(0);
    if !(-5..17).contains(&exp) {
        return sci;
    }
    let decimals = (16 - exp).max(0) as usize;
    let mut s = format!("{v:.decimals$}");
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    s
}

fn write_corner(out: &mut String, c: &Corner) {
    let _ = write!(out, "{}", c.vertex);
    match (c.texcoord, c.normal) {
        (None, None) => {}
        (Some(t), None) => {
            let _ = write!(out, "/{t}");
        }
        (None, Some(n)) => {
            let _ = write!(out, "//{n}");
        }
        (Some(t), Some(n)) => {
            let _ = write!(out, "/{t}/{n}");
        }
    }
}

pub fn write_obj(m: &TexturedModel) -> String {
    let mut out = String::new();
    for line in &m.passthrough {
        out.push_str(line);
        out.push('\n');
    }
    for v in &m.vertices {
        let _ = writeln!(
            out,
            "v {} {} {}",
            format_real(v[0]),
            format_real(v[1]),
            format_real(v[2])
        );
    }
    for t in &m.texcoords {
        let _ = writeln!(out, "vt {} {}", format_real(t[0]), format_real(t[1]));
    }
    for n in &m.normals {
        let _ = writeln!(
            out,
            "vn {} {} {}",
            format_real(n[0]),
            format_real(n[1]),
            format_real(n[2])
        );
    }
    for face in &m.faces {
        out.push('f');
        for c in face.corners() {
            out.push(' ');
            write_corner(&mut out, c);
        }
        out.push('\n');
    }
    out
}

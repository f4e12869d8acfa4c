use std::fmt::Write as _;

use super::FormatError;
use crate::chaos::LuKey;

/// Line labels, in file order.
pub const KEY_LABELS: [&str; 4] = ["vertices", "polygons", "texture1", "texture2"];

/// The twelve secret values: initial conditions of four independent
/// trajectories.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeyBundle {
    pub vertices_key: LuKey,
    pub polygons_key: LuKey,
    /// Drives the DNA key image added to the texture.
    pub texture1_key: LuKey,
    /// Drives the complement mask applied to the texture.
    pub texture2_key: LuKey,
}

impl Default for KeyBundle {
    fn default() -> Self {
        Self {
            vertices_key: LuKey::new(-6.045, 2.668, 16.363),
            polygons_key: LuKey::new(-5.045, 2.668, 16.363),
            texture1_key: LuKey::new(-6.045, 2.668, 20.363),
            texture2_key: LuKey::new(-5.045, 3.668, 16.363),
        }
    }
}

impl KeyBundle {
    pub fn keys(&self) -> [LuKey; 4] {
        [
            self.vertices_key,
            self.polygons_key,
            self.texture1_key,
            self.texture2_key,
        ]
    }

    pub fn from_keys(keys: [LuKey; 4]) -> Self {
        Self {
            vertices_key: keys[0],
            polygons_key: keys[1],
            texture1_key: keys[2],
            texture2_key: keys[3],
        }
    }

    /// All twelve values, key by key, each as `x0, y0, z0`.
    pub fn values(&self) -> [f64; 12] {
        let keys = self.keys();
        std::array::from_fn(|i| keys[i / 3].component(i % 3))
    }

    /// Copy with value `index` (0..12, in [`KeyBundle::values`] order) replaced.
    pub fn with_value(&self, index: usize, value: f64) -> Self {
        let mut keys = self.keys();
        keys[index / 3] = keys[index / 3].with_component(index % 3, value);
        Self::from_keys(keys)
    }
}

pub fn parse_keyfile(text: &str) -> Result<KeyBundle, FormatError> {
    let mut slots: [Option<LuKey>; 4] = [None; 4];
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [label, x, y, z] = fields[..] else {
            return Err(FormatError::Key(format!(
                "line {line_no}: expected `<label> <x0> <y0> <z0>`"
            )));
        };
        let slot = KEY_LABELS
            .iter()
            .position(|l| *l == label)
            .ok_or_else(|| FormatError::Key(format!("line {line_no}: unknown label {label:?}")))?;
        if slots[slot].is_some() {
            return Err(FormatError::Key(format!(
                "line {line_no}: duplicate label {label:?}"
            )));
        }
        let num = |tok: &str| -> Result<f64, FormatError> {
            tok.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| FormatError::Key(format!("line {line_no}: bad number {tok:?}")))
        };
        slots[slot] = Some(LuKey::new(num(x)?, num(y)?, num(z)?));
    }
    let mut keys = [LuKey::new(0.0, 0.0, 0.0); 4];
    for (i, slot) in slots.iter().enumerate() {
        keys[i] =
            slot.ok_or_else(|| FormatError::Key(format!("missing label {:?}", KEY_LABELS[i])))?;
    }
    Ok(KeyBundle::from_keys(keys))
}

/// Shortest round-trip decimal form, so defaults read as `-6.045`.
pub fn write_keyfile(kb: &KeyBundle) -> String {
    let mut out = String::new();
    for (label, key) in KEY_LABELS.iter().zip(kb.keys()) {
        let _ = writeln!(out, "{label} {:?} {:?} {:?}", key.x0, key.y0, key.z0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEFAULT_FILE: &str = "vertices -6.045 2.668 16.363\n\
                                polygons -5.045 2.668 16.363\n\
                                texture1 -6.045 2.668 20.363\n\
                                texture2 -5.045 3.668 16.363\n";

    #[test]
    fn default_file() {
        let kb = parse_keyfile(DEFAULT_FILE).unwrap();
        assert_eq!(kb, KeyBundle::default());
        assert_eq!(kb.vertices_key, LuKey::new(-6.045, 2.668, 16.363));
        assert_eq!(kb.texture1_key.z0, 20.363);
        assert_eq!(write_keyfile(&kb), DEFAULT_FILE);
    }

    #[test]
    fn order_and_comments_are_free() {
        let text = "# keys\ntexture2 -5.045 3.668 16.363\nvertices -6.045 2.668 16.363\n\npolygons -5.045 2.668 16.363\ntexture1 -6.045 2.668 20.363\n";
        assert_eq!(parse_keyfile(text).unwrap(), KeyBundle::default());
    }

    #[test]
    fn errors() {
        let missing = DEFAULT_FILE.lines().take(3).collect::<Vec<_>>().join("\n");
        assert!(
            matches!(parse_keyfile(&missing), Err(FormatError::Key(m)) if m.contains("texture2"))
        );
        let dup = format!("{DEFAULT_FILE}vertices 1 2 3\n");
        assert!(matches!(parse_keyfile(&dup), Err(FormatError::Key(m)) if m.contains("duplicate")));
        let bad = DEFAULT_FILE.replace("20.363", "twenty");
        assert!(
            matches!(parse_keyfile(&bad), Err(FormatError::Key(m)) if m.contains("bad number"))
        );
        assert!(parse_keyfile("vertices 1 2\n").is_err());
        assert!(parse_keyfile("colour 1 2 3\n").is_err());
    }

    #[test]
    fn values_are_ordered() {
        let kb = KeyBundle::default();
        let v = kb.values();
        assert_eq!(v[0], -6.045);
        assert_eq!(v[8], 20.363);
        assert_eq!(
            kb.with_value(4, 2.66800000001).polygons_key.y0,
            2.66800000001
        );
    }
}

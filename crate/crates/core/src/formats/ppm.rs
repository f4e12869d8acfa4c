use super::FormatError;

/// 8-bit RGB raster, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    width: usize,
    height: usize,
    pixels: Vec<[u8; 3]>,
}

impl RgbImage {
    pub fn new(width: usize, height: usize, pixels: Vec<[u8; 3]>) -> Result<Self, FormatError> {
        if width == 0 || height == 0 {
            return Err(FormatError::Ppm(format!(
                "image dimensions must be positive, got {width}x{height}"
            )));
        }
        if pixels.len() != width * height {
            return Err(FormatError::Ppm(format!(
                "{} pixels for a {width}x{height} image",
                pixels.len()
            )));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, rgb: [u8; 3]) -> Result<Self, FormatError> {
        Self::new(width, height, vec![rgb; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    pub fn pixel(&self, x: usize, y: usize) -> [u8; 3] {
        self.pixels[y * self.width + x]
    }

    /// Bytes in R-plane, G-plane, B-plane order.
    pub fn to_planes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.pixels.len() * 3);
        for ch in 0..3 {
            out.extend(self.pixels.iter().map(|p| p[ch]));
        }
        out
    }

    /// Inverse of [`RgbImage::to_planes`].
    pub fn from_planes(width: usize, height: usize, planes: &[u8]) -> Result<Self, FormatError> {
        let n = width * height;
        if planes.len() != 3 * n {
            return Err(FormatError::Ppm(format!(
                "{} plane bytes for a {width}x{height} image",
                planes.len()
            )));
        }
        let pixels = (0..n)
            .map(|i| [planes[i], planes[n + i], planes[2 * n + i]])
            .collect();
        Self::new(width, height, pixels)
    }

    /// Interleaved RGB bytes, as stored in the file.
    pub fn as_bytes(&self) -> impl Iterator<Item = u8> + '_ {
        self.pixels.iter().flatten().copied()
    }
}

struct Header<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize, FormatError> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| FormatError::Ppm(format!("missing or invalid {what}")))
    }
}

/// Reads a binary (P6) PPM with maxval 255.
pub fn parse_ppm(bytes: &[u8]) -> Result<RgbImage, FormatError> {
    if !bytes.starts_with(b"P6") {
        return Err(FormatError::Ppm("expected magic \"P6\"".into()));
    }
    let mut h = Header {
        data: bytes,
        pos: 2,
    };
    if !h
        .data
        .get(h.pos)
        .is_some_and(|b| b.is_ascii_whitespace() || *b == b'#')
    {
        return Err(FormatError::Ppm("expected magic \"P6\"".into()));
    }
    let width = h.number("width")?;
    let height = h.number("height")?;
    let maxval = h.number("maxval")?;
    if maxval != 255 {
        return Err(FormatError::Ppm(format!(
            "maxval {maxval} unsupported, need 255"
        )));
    }
    // exactly one whitespace byte separates the header from the raster
    if !h.data.get(h.pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(FormatError::Ppm("missing whitespace after maxval".into()));
    }
    let raster = &bytes[h.pos + 1..];
    let need = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(3))
        .ok_or_else(|| FormatError::Ppm("image dimensions overflow".into()))?;
    if raster.len() < need {
        return Err(FormatError::Ppm(format!(
            "truncated pixel data: {} of {need} bytes",
            raster.len()
        )));
    }
    let pixels = raster[..need]
        .chunks_exact(3)
        .map(|c| [c[0], c[1], c[2]])
        .collect();
    RgbImage::new(width, height, pixels)
}

pub fn write_ppm(img: &RgbImage) -> Vec<u8> {
    let header = format!("P6\n{} {}\n255\n", img.width, img.height);
    let mut out = Vec::with_capacity(header.len() + img.pixels.len() * 3);
    out.extend_from_slice(header.as_bytes());
    out.extend(img.as_bytes());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_black_pixel() {
        let img = RgbImage::filled(1, 1, [0, 0, 0]).unwrap();
        let bytes = write_ppm(&img);
        assert_eq!(bytes, b"P6\n1 1\n255\n\0\0\0");
        assert_eq!(parse_ppm(&bytes).unwrap(), img);
    }

    #[test]
    fn header_comments() {
        let bytes = b"P6 # made by hand\n2 1\n# max\n255\n\x01\x02\x03\x04\x05\x06";
        let img = parse_ppm(bytes).unwrap();
        assert_eq!(img.pixels(), &[[1, 2, 3], [4, 5, 6]]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_ppm(b"P3\n1 1\n255\n0 0 0").is_err());
        assert!(parse_ppm(b"P61 1\n255\n\0\0\0").is_err());
        assert!(parse_ppm(b"P6\n1 1\n65535\n\0\0\0\0\0\0").is_err());
        assert!(parse_ppm(b"P6\n2 2\n255\n\0\0\0").is_err());
        assert!(parse_ppm(b"P6\n0 2\n255\n").is_err());
        assert!(parse_ppm(b"P6\n1\n").is_err());
    }

    #[test]
    fn planes_roundtrip() {
        let img = RgbImage::new(2, 1, vec![[1, 2, 3], [4, 5, 6]]).unwrap();
        let planes = img.to_planes();
        assert_eq!(planes, vec![1, 4, 2, 5, 3, 6]);
        assert_eq!(RgbImage::from_planes(2, 1, &planes).unwrap(), img);
        assert!(RgbImage::from_planes(2, 2, &planes).is_err());
    }
}

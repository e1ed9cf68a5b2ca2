//! `CMX1` model files.
//!
//! Little-endian. Magic `CMX1`, then eight `u32` shape fields
//! (C, H, W, P, d, L, kernel, classes), then every `f32` array in a fixed
//! order: embedding weight, bias, BN; per layer depthwise weight, bias, BN,
//! pointwise weight, bias, BN; head weight and bias. Each BN block is
//! gamma, beta, mean, var. The BN epsilon is not stored.

use super::{
    BatchNormParams, ConvMixerParams, EmbeddingMatrix, MixerLayer, ModelConfig, ModelError,
    BN_EPSILON,
};

pub const CMX1_MAGIC: [u8; 4] = *b"CMX1";

pub fn save_model(params: &ConvMixerParams) -> Vec<u8> {
    let c = &params.config;
    let mut out = Vec::new();
    out.extend_from_slice(&CMX1_MAGIC);
    for v in [
        c.channels, c.height, c.width, c.patch, c.dim, c.depth, c.kernel, c.classes,
    ] {
        out.extend_from_slice(&(v as u32).to_le_bytes());
    }
    let mut put = |xs: &[f32]| {
        for x in xs {
            out.extend_from_slice(&x.to_le_bytes());
        }
    };
    let put_bn = |put: &mut dyn FnMut(&[f32]), bn: &BatchNormParams| {
        put(&bn.gamma);
        put(&bn.beta);
        put(&bn.running_mean);
        put(&bn.running_var);
    };
    put(params.embed.data());
    put(&params.embed_bias);
    put_bn(&mut put, &params.embed_bn);
    for l in &params.layers {
        put(&l.dw_weight);
        put(&l.dw_bias);
        put_bn(&mut put, &l.dw_bn);
        put(&l.pw_weight);
        put(&l.pw_bias);
        put_bn(&mut put, &l.pw_bn);
    }
    put(&params.head_weight);
    put(&params.head_bias);
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
}

impl Reader<'_> {
    fn take(&mut self, n: usize, field: &str) -> Result<&[u8], ModelError> {
        if self.bytes.len() < n {
            return Err(ModelError::TruncatedFile(field.to_string()));
        }
        let (head, tail) = self.bytes.split_at(n);
        self.bytes = tail;
        Ok(head)
    }

    fn u32(&mut self, field: &str) -> Result<usize, ModelError> {
        let b = self.take(4, field)?;
        Ok(u32::from_le_bytes(b.try_into().unwrap()) as usize)
    }

    fn f32s(&mut self, n: usize, field: &str) -> Result<Vec<f32>, ModelError> {
        let len = n
            .checked_mul(4)
            .ok_or_else(|| ModelError::ShapeMismatch(format!("{field} too large")))?;
        let b = self.take(len, field)?;
        Ok(b.chunks_exact(4)
            .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
            .collect())
    }

    fn bn(&mut self, d: usize, field: &str) -> Result<BatchNormParams, ModelError> {
        Ok(BatchNormParams {
            gamma: self.f32s(d, &format!("{field}.gamma"))?,
            beta: self.f32s(d, &format!("{field}.beta"))?,
            running_mean: self.f32s(d, &format!("{field}.running_mean"))?,
            running_var: self.f32s(d, &format!("{field}.running_var"))?,
            epsilon: BN_EPSILON,
        })
    }
}

pub fn load_model(bytes: &[u8]) -> Result<ConvMixerParams, ModelError> {
    if bytes.len() < 4 || bytes[..4] != CMX1_MAGIC {
        return Err(ModelError::BadMagic);
    }
    let mut r = Reader { bytes: &bytes[4..] };
    let config = ModelConfig {
        channels: r.u32("C")?,
        height: r.u32("H")?,
        width: r.u32("W")?,
        patch: r.u32("P")?,
        dim: r.u32("d")?,
        depth: r.u32("L")?,
        kernel: r.u32("kernel")?,
        classes: r.u32("classes")?,
    };
    config.validate()?;
    let d = config.dim;
    let p_b = config.patch_len();
    let k2 = checked(config.kernel, config.kernel)?;
    let (embed_len, dw_len, pw_len, head_len) = (
        checked(p_b, d)?,
        checked(d, k2)?,
        checked(d, d)?,
        checked(config.classes, d)?,
    );

    let embed = EmbeddingMatrix::new(p_b, d, r.f32s(embed_len, "embed_weight")?)?;
    let embed_bias = r.f32s(d, "embed_bias")?;
    let embed_bn = r.bn(d, "embed_bn")?;
    let mut layers = Vec::new();
    for i in 0..config.depth {
        layers.push(MixerLayer {
            dw_weight: r.f32s(dw_len, &format!("layer{i}.dw_weight"))?,
            dw_bias: r.f32s(d, &format!("layer{i}.dw_bias"))?,
            dw_bn: r.bn(d, &format!("layer{i}.dw_bn"))?,
            pw_weight: r.f32s(pw_len, &format!("layer{i}.pw_weight"))?,
            pw_bias: r.f32s(d, &format!("layer{i}.pw_bias"))?,
            pw_bn: r.bn(d, &format!("layer{i}.pw_bn"))?,
        });
    }
    let head_weight = r.f32s(head_len, "head_weight")?;
    let head_bias = r.f32s(config.classes, "head_bias")?;
    if !r.bytes.is_empty() {
        return Err(ModelError::TrailingBytes(r.bytes.len()));
    }
    let params = ConvMixerParams {
        config,
        embed,
        embed_bias,
        embed_bn,
        layers,
        head_weight,
        head_bias,
    };
    params.validate()?;
    Ok(params)
}

fn checked(a: usize, b: usize) -> Result<usize, ModelError> {
    a.checked_mul(b)
        .ok_or_else(|| ModelError::ShapeMismatch(format!("{a}x{b} overflows")))
}

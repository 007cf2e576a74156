//! One module per subcommand, plus small helpers they share.

pub mod ambiguity;
pub mod conjecture;
pub mod continuum;
pub mod gauss;
pub mod obstruction;
pub mod orbits;
pub mod solve;

use serde_json::{json, Value};

use pauli_core::measurement::{BasisFrame, FrameSet};
use pauli_core::statespace::StateVector;

use crate::report::CliResult;

/// Builds a frame set from `--frames` names. Recognised names: `standard`
/// (the coordinate basis) and `character` (the cyclic character basis).
pub fn build_frames(dim: usize, names: &[String]) -> CliResult<FrameSet> {
    let mut frames = Vec::with_capacity(names.len());
    for name in names {
        let frame = match name.as_str() {
            "standard" => BasisFrame::standard(dim)?,
            "character" => BasisFrame::cyclic_character(dim)?,
            other => {
                return Err(format!(
                    "unknown frame {other:?}; expected \"standard\" or \"character\""
                )
                .into())
            }
        };
        frames.push(frame);
    }
    Ok(FrameSet::new(frames)?)
}

/// Serializes a state as an array of `[re, im]` coefficient pairs.
pub fn state_json(state: &StateVector) -> Value {
    Value::Array(state.coeffs().iter().map(|c| json!([c.re, c.im])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_names_build_the_expected_set() {
        let frames = build_frames(7, &["standard".into(), "character".into()]).unwrap();
        assert_eq!(frames.len(), 2);
        assert_eq!(frames.frames()[0].label(), "standard");
        assert_eq!(frames.frames()[1].label(), "character");
    }

    #[test]
    fn unknown_and_duplicate_frame_names_are_rejected() {
        assert!(build_frames(7, &["fourier".into()]).is_err());
        assert!(build_frames(7, &["standard".into(), "standard".into()]).is_err());
    }

    #[test]
    fn state_serializes_as_re_im_pairs() {
        let x = StateVector::new(vec![num_complex::Complex64::new(0.5, -1.25)]).unwrap();
        assert_eq!(state_json(&x), json!([[0.5, -1.25]]));
    }
}

// Copyright 2026 The cvqmap Authors
// SPDX-License-Identifier: Apache-2.0

/// Text form used for every float written to CSV or JSON: 17 significant
/// digits in scientific notation, which round-trips any `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

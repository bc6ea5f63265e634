// Copyright 2026 The qbool Developers
// SPDX-License-Identifier: Apache-2.0

//! Reruns the calibration sweeps that produced the pinned constants.

use qbool_core::calibration::{bh_sweep, talagrand_sweep, BH_C_2, CALIBRATION_SEED, TALAGRAND_C_EMP};

fn main() -> qbool_core::Result<()> {
    let t = talagrand_sweep(CALIBRATION_SEED, TALAGRAND_C_EMP.instances)?;
    println!("talagrand: {}", serde_json::to_string(&t)?);
    for d in 1..=3 {
        let b = bh_sweep(CALIBRATION_SEED, BH_C_2.instances, d, d == 2)?;
        println!("bh d={d} diagonal={}: {}", d == 2, serde_json::to_string(&b)?);
    }
    Ok(())
}

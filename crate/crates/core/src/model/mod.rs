// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

//! Time-dependent Lindblad models and their evaluation at an instant.

mod config;
mod lindblad;
mod schedule;

pub use config::{ChannelConfig, ModelConfig, OperatorScheduleConfig, ScalarScheduleConfig};
pub use lindblad::{
    Channel, LindbladModel, ModelSnapshot, SnapshotChannel, ValidationIssue, ValidationReport,
    HAMILTONIAN_HERMITIAN_RTOL,
};
pub use schedule::{OperatorSchedule, ScalarSchedule, Table};

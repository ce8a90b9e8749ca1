// Copyright 2026 The weakinv Authors
// SPDX-License-Identifier: Apache-2.0

//! Criterion benchmarks for weakinv; run with `cargo bench -p weakinv-bench`.

// Copyright 2026 The entdyn Authors
// SPDX-License-Identifier: Apache-2.0

//! Benchmarks live under `benches/`.

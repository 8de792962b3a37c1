// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

namespace gcbf::cli {

// Entry point for the gcbf tool. Exit codes: 0 ok, 2 usage, 3 format/IO,
// 4 shape/config mismatch.
int run(int argc, const char* const* argv);

}  // namespace gcbf::cli

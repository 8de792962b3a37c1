// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "gcbf/cli.hpp"

int main(int argc, char** argv) { return gcbf::cli::run(argc, argv); }

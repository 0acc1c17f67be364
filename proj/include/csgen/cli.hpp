/**
 * \file cli.hpp
 * \brief Entry point of the command-line driver, callable in-process.
 *
 * Copyright 2026 The csgen authors.
 * License: Apache License 2.0
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace csgen {

/**
 * Runs the command-line driver on already-split arguments (program name
 * excluded). Normal output goes to `out`, diagnostics to `err`.
 *
 * Returns the process exit code: 0 on success, 1 when a verification
 * subcommand found failures, 2 on usage or input errors.
 */
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace csgen

// SPDX-License-Identifier: Apache-2.0
#include "qst/cli.hpp"

int main(int argc, char** argv) { return qst::cli_main(argc, argv); }

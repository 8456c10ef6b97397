// SPDX-License-Identifier: Apache-2.0

#include "mhdrt/cli.hpp"

int main(int argc, char** argv) {
  return mhdrt::run_command(std::vector<std::string>(argv + 1, argv + argc));
}

// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "cli.h"

#include <iostream>

int main(int argc, char** argv)
{
    return txpack::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}

// Copyright 2026 The anisodot Authors
// SPDX-License-Identifier: Apache-2.0

#include <anisodot/cli.hpp>

int main(int argc, char** argv) { return anisodot::main_entry(argc, argv); }

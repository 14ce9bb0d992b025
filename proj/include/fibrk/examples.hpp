#ifndef FIBRK_EXAMPLES_HPP
#define FIBRK_EXAMPLES_HPP

#include <string>
#include <vector>

#include "fibrk/io.hpp"

namespace fibrk {

struct ExampleInfo {
    std::string name;
    std::string description;
    std::string json_text;
};

const std::vector<ExampleInfo>& bundled_examples();

// Error(IndexOutOfRange) for unknown names.
const ExampleInfo& find_example(const std::string& name);

// Deterministic full report for a bundled example (identities checked).
OJson run_example(const std::string& name);

std::string example_text(const OJson& report);

}  // namespace fibrk

#endif

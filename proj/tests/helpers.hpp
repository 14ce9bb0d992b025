#ifndef FIBRK_TESTS_HELPERS_HPP
#define FIBRK_TESTS_HELPERS_HPP

#include <string>

#include "fibrk/examples.hpp"

namespace fibrk_tests {

inline fibrk::DatumFile load_example(const std::string& name) {
    return fibrk::load_datum(fibrk::Json::parse(fibrk::find_example(name).json_text));
}

}  // namespace fibrk_tests

#endif

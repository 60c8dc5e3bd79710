#pragma once

#include "gcx/category.hpp"

#include <string>

inline std::string data_path(const std::string& name) { return std::string(GCX_DATA_DIR) + "/" + name; }

inline gcx::CategoryData load_data(const std::string& name) { return gcx::load_category(data_path(name)); }

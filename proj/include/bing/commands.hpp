#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bing {

// Exit codes shared by every command: 0 ok, 2 bad input, 3 verification
// failure, 4 resource cap.

int cmd_extend(const std::string& pairs_path, int stages, const std::string& out_path,
               std::ostream& out, std::ostream& err);

int cmd_eval(const std::string& cert_path, const std::string& point_text, int max_stages,
             std::ostream& out, std::ostream& err);

int cmd_verify(const std::string& cert_path, std::ostream& out, std::ostream& err);

int cmd_example(const std::string& name, const std::vector<std::string>& eps_list, long long k,
                std::ostream& out, std::ostream& err);

int cmd_audit(const std::string& cert_path, const std::string& point_text,
              const std::string& eps_text, long long height, int max_stages, std::ostream& out,
              std::ostream& err);

// full argv dispatch, shared by the binary and the tests
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bing

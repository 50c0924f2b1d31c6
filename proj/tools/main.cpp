#include <curl/curl.h>

#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
    curl_global_init(CURL_GLOBAL_DEFAULT);
    int rc = causalstore::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
    curl_global_cleanup();
    return rc;
}

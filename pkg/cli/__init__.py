# Command-line front end and verification suites

# Tests for freydlab

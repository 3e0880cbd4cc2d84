# tannakit test suite

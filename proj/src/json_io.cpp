namespace twosegal {
}

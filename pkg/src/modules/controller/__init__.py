"""Controller module - distributed primal-dual controller of the DC grid."""

namespace mrls {}

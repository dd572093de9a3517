"""HTTP service: pydantic schemas, handlers, FastAPI app."""

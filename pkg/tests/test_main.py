"""
Tests for main FastAPI application
"""


def test_app_initialization(test_client):
    """Test that the FastAPI app initializes correctly"""
    assert test_client.app.title == "Notched square isoperimetric profile"
    assert test_client.app.version == "1.0.0"


def test_profile_routes_registered(test_client):
    """Test that the profile router is mounted"""
    paths = {route.path for route in test_client.app.routes}
    assert {"/health", "/constants", "/profile", "/profile/sweep", "/oracle"} <= paths


def test_openapi_schema_available(test_client):
    """Test that the OpenAPI schema lists the endpoints"""
    response = test_client.get("/openapi.json")
    assert response.status_code == 200
    assert "/profile/sweep" in response.json()["paths"]

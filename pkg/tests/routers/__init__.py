"""Router tests package"""

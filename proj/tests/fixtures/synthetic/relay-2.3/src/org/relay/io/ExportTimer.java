package org.relay.io;

/** Handles user export message. */
public class ExportTimer {
  private int sessionUser;
  public void messageImport() { userMessage.userCustomer(); }
  public void importMessage() { customerUser.userCustomer(); }
  public void userCustomer() { messageSession.userSession(); }
}
